#include "oamcgh/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "oamcgh/bessel.hpp"
#include "oamcgh/fourier.hpp"

namespace oamcgh {

namespace {

// (-i)^m
cplx minus_i_power(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

double max_over_aperture(const RealGrid& g) {
  const auto& grid = g.geometry();
  double m = 0.0;
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c)
      if (grid.inside(r, c)) m = std::max(m, g.at(r, c));
  return m;
}

}  // namespace

double analytic_order_amplitude(int m, double a_over_amax, double sigma_prime) {
  const double j = bessel_jn(m, sigma_prime * a_over_amax);
  return (m % 2 == 0) ? j : -j;
}

double analytic_order_phase(int m, double phi, double a_over_amax, double sigma_prime,
                            double carrier) {
  return -m * phi + (m + 1) * carrier + 0.5 * sigma_prime * a_over_amax * a_over_amax;
}

ComplexField analytic_order_field(int m, const RealGrid& a_over_amax, const RealGrid& phase,
                                  double sigma_prime) {
  const GridGeometry& grid = a_over_amax.geometry();
  if (!(phase.geometry() == grid)) {
    throw std::invalid_argument("diffraction-sim: amplitude and phase grids differ in geometry");
  }
  ComplexField out(grid, Plane::pupil);
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.inside(r, c)) continue;
      const double ratio = a_over_amax.at(r, c);
      const double amp = analytic_order_amplitude(m, ratio, sigma_prime);
      const double ph = analytic_order_phase(m, phase.at(r, c), ratio, sigma_prime, 0.0);
      out.at(r, c) = std::polar(amp, -ph);
    }
  return out;
}

ComplexField analytic_first_order(const ComplexField& target, double sigma_prime) {
  RecordingTarget rec = recording_target(target);
  const double a_max = max_over_aperture(rec.amplitude);
  if (a_max <= 0.0) throw std::invalid_argument("diffraction-sim: target field is all zero");
  for (auto& a : rec.amplitude.values()) a /= a_max;
  return analytic_order_field(-1, rec.amplitude, rec.phase, sigma_prime);
}

std::vector<double> modulo2pi_order_weights(int m_min, int m_max, double depth) {
  if (m_max < m_min) throw std::invalid_argument("modulo2pi: empty order range");
  std::vector<double> w;
  for (int m = m_min; m <= m_max; ++m) w.push_back(sinc(depth - m));
  return w;
}

std::vector<double> modulo2pi_numeric_weights(int l, int m_min, int m_max, double depth,
                                              int samples) {
  if (m_max < m_min) throw std::invalid_argument("modulo2pi: empty order range");
  if (l == 0 || samples <= 0) throw std::invalid_argument("modulo2pi: need l != 0 and samples > 0");
  std::vector<cplx> profile(samples);
  std::vector<double> lt(samples);
  for (int j = 0; j < samples; ++j) {
    const double theta = kTwoPi * (j + 0.5) / samples;
    lt[j] = l * theta;
    double wrapped = std::fmod(lt[j], kTwoPi);
    if (wrapped < 0.0) wrapped += kTwoPi;
    profile[j] = std::polar(1.0, depth * wrapped);
  }
  std::vector<double> w;
  for (int m = m_min; m <= m_max; ++m) {
    cplx sum = 0.0;
    for (int j = 0; j < samples; ++j) sum += profile[j] * std::polar(1.0, -m * lt[j]);
    sum /= static_cast<double>(samples);
    w.push_back((sum * std::polar(1.0, -kPi * (depth - m))).real());
  }
  return w;
}

double jacobi_anger_check(const HologramFunction& hologram, int truncation_m) {
  if (truncation_m < 0) throw std::invalid_argument("jacobi_anger_check: truncation must be >= 0");
  const GridGeometry& grid = hologram.geometry();
  const double s = hologram.sigma_prime;
  const cplx prefactor = std::polar(1.0, -0.5 * s);
  std::vector<double> bessel(truncation_m + 1);
  double worst = 0.0;
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.inside(r, c)) continue;
      const double ratio = hologram.amplitude.at(r, c) / hologram.a_max;
      const double psi = hologram.phase.at(r, c) - hologram.reference.carrier(grid, r, c);
      for (int m = 0; m <= truncation_m; ++m) bessel[m] = bessel_jn(m, s * ratio);
      cplx sum = bessel[0];
      for (int m = 1; m <= truncation_m; ++m) {
        const double neg = (m % 2 == 0) ? bessel[m] : -bessel[m];  // J_{-m}
        sum += minus_i_power(m) * bessel[m] * std::polar(1.0, m * psi);
        sum += minus_i_power(-m) * neg * std::polar(1.0, -m * psi);
      }
      const cplx series = prefactor * std::polar(1.0, -0.5 * s * ratio * ratio) * sum;
      const cplx exact = std::polar(1.0, -hologram.f.at(r, c));
      worst = std::max(worst, std::abs(series - exact));
    }
  return worst;
}

ComplexField far_field(const ComplexField& pupil) {
  if (pupil.plane() != Plane::pupil) throw std::invalid_argument("far_field: input is not a pupil field");
  ComplexField out = pupil;
  centered_dft(out.values(), out.rows(), out.cols(), FftDirection::forward);
  out.set_plane(Plane::far_field);
  return out;
}

ComplexField back_propagate(const ComplexField& far) {
  if (far.plane() != Plane::far_field) {
    throw std::invalid_argument("back_propagate: input is not a far-field");
  }
  ComplexField out = far;
  centered_dft(out.values(), out.rows(), out.cols(), FftDirection::inverse);
  out.set_plane(Plane::pupil);
  return out;
}

OrderSpec order_spec(int m, const ReferenceWave& ref, const GridGeometry& grid) {
  if (!(ref.tilt_waves > 0.0)) throw std::invalid_argument("order_spec: tilt_waves must be > 0");
  const bool horizontal = ref.axis == TiltAxis::horizontal;
  const double n = horizontal ? grid.cols() : grid.rows();
  const double spacing = ref.tilt_waves * n / grid.aperture_diameter();
  OrderSpec spec;
  spec.m = m;
  spec.axis = ref.axis;
  spec.window_width_bins = spacing;
  spec.offset_bins = (horizontal ? -m : m) * spacing;
  return spec;
}

ComplexField isolate_order(const ComplexField& far, const OrderSpec& spec) {
  if (far.plane() != Plane::far_field) {
    throw std::invalid_argument("isolate_order: input is not a far-field");
  }
  const bool horizontal = spec.axis == TiltAxis::horizontal;
  const int n = horizontal ? far.cols() : far.rows();
  const double lo = spec.offset_bins - 0.5 * spec.window_width_bins;
  const double hi = spec.offset_bins + 0.5 * spec.window_width_bins;
  if (!(spec.window_width_bins > 0.0) || lo < -(n / 2) || hi > n - n / 2) {
    throw std::out_of_range("isolate_order: window [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + ") outside the far-field grid");
  }

  ComplexField out = far;
  for (int r = 0; r < out.rows(); ++r)
    for (int c = 0; c < out.cols(); ++c) {
      const int k = horizontal ? c - out.cols() / 2 : r - out.rows() / 2;
      if (k < lo || k >= hi) out.at(r, c) = 0.0;
    }

  // Demodulate in the pupil so the window center lands on bin 0 exactly.
  centered_dft(out.values(), out.rows(), out.cols(), FftDirection::inverse);
  for (int r = 0; r < out.rows(); ++r)
    for (int c = 0; c < out.cols(); ++c) {
      const int p = horizontal ? c - out.cols() / 2 : r - out.rows() / 2;
      out.at(r, c) *= std::polar(1.0, -kTwoPi * spec.offset_bins * p / n);
    }
  centered_dft(out.values(), out.rows(), out.cols(), FftDirection::forward);
  return out;
}

PipelineResult simulate_pipeline(const SuperpositionState& state, double sigma_prime,
                                 double tilt_waves, bool precondition, const GridGeometry& grid,
                                 const PipelineOptions& options) {
  if (!(tilt_waves > 0.0) || !std::isfinite(tilt_waves)) {
    throw std::invalid_argument("diffraction-sim: tilt_waves must be finite and > 0");
  }
  HologramParams params = HologramParams::from_sigma_prime(sigma_prime, options.i_max_mode);
  params.precondition = precondition;
  params.wfe_map = options.wfe_map;
  params.validate();

  ComplexField theory = sample_state_on_grid(state, grid);
  RecordingTarget target = recording_target(theory);
  if (precondition) {
    PreconditionedRecording pre =
        oamcgh::precondition(target.amplitude, target.phase, sigma_prime,
                             options.wfe_map ? &*options.wfe_map : nullptr);
    target.amplitude = std::move(pre.amplitude);
    target.phase = std::move(pre.phase);
  }

  const ReferenceWave ref{tilt_waves, 1.0, options.axis};
  HologramFunction hologram = build_hologram(target.amplitude, target.phase, ref, params);
  const ComplexField t = slm_transmittance(
      hologram, options.slm_surface_error ? &*options.slm_surface_error : nullptr);
  ComplexField far = far_field(t);
  const OrderSpec spec = order_spec(-1, hologram.reference, grid);
  ComplexField generated = back_propagate(isolate_order(far, spec));

  FidelityReport report =
      probability(theory, generated, RunMetadata{state.label(), sigma_prime, tilt_waves, precondition});
  return PipelineResult{std::move(theory), std::move(hologram), std::move(far),
                        std::move(generated), spec, report};
}

RealGrid synth_interferogram(const ComplexField& field, double ref_tilt_waves,
                             InterferogramAxis axis) {
  if (field.plane() != Plane::pupil) {
    throw std::invalid_argument("synth_interferogram: input is not a pupil field");
  }
  const GridGeometry& grid = field.geometry();
  RealGrid out(grid);
  double peak = 0.0;
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.inside(r, c)) continue;
      const double u = axis == InterferogramAxis::horizontal ? grid.x(c) : grid.y(r);
      const cplx ref = std::polar(1.0, kTwoPi * ref_tilt_waves * u / grid.aperture_diameter());
      const double i = std::norm(field.at(r, c) + ref);
      out.at(r, c) = i;
      peak = std::max(peak, i);
    }
  if (peak > 0.0)
    for (auto& v : out.values()) v /= peak;
  return out;
}

}  // namespace oamcgh
