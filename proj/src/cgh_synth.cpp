#include "oamcgh/cgh_synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "oamcgh/bessel.hpp"

namespace oamcgh {

double ReferenceWave::carrier(const GridGeometry& grid, int row, int col) const {
  const double u = axis == TiltAxis::horizontal ? grid.x(col) : grid.y(row);
  return kTwoPi * tilt_waves * u / grid.aperture_diameter();
}

HologramParams HologramParams::from_sigma(double sigma, ImaxMode mode) {
  HologramParams p;
  p.scale_by = Scale::sigma;
  p.scale = sigma;
  p.i_max_mode = mode;
  return p;
}

HologramParams HologramParams::from_sigma_prime(double sigma_prime, ImaxMode mode) {
  HologramParams p;
  p.scale_by = Scale::sigma_prime;
  p.scale = sigma_prime;
  p.i_max_mode = mode;
  return p;
}

void HologramParams::validate() const {
  const char* name = scale_by == Scale::sigma ? "sigma" : "sigma_prime";
  if (!std::isfinite(scale) || scale < 0.0) {
    throw std::invalid_argument(std::string("cgh-synth: ") + name + " must be finite and >= 0");
  }
  if (precondition) {
    if (scale_by != Scale::sigma_prime) {
      throw std::invalid_argument("cgh-synth: preconditioning needs an explicit sigma_prime");
    }
    if (!(scale > 0.0 && scale <= kMaxPreconditionSigmaPrime)) {
      throw std::invalid_argument(
          "cgh-synth: preconditioning requires 0 < sigma_prime <= 1.8412 (monotonic J1 "
          "branch), got " + std::to_string(scale));
    }
  }
}

double recording_intensity(double a, double phi, const ReferenceWave& ref, double carrier) {
  const double b = ref.amplitude;
  const double i = a * a + b * b + 2.0 * a * b * std::cos(phi - carrier);
  return std::max(0.0, i);
}

HologramFunction build_hologram(const RealGrid& amplitude, const RealGrid& phase,
                                ReferenceWave ref, const HologramParams& params) {
  params.validate();
  const GridGeometry& grid = amplitude.geometry();
  if (!(phase.geometry() == grid)) {
    throw std::invalid_argument("cgh-synth: amplitude and phase grids differ in geometry");
  }
  if (!(ref.tilt_waves >= 0.0) || !std::isfinite(ref.tilt_waves)) {
    throw std::invalid_argument("cgh-synth: tilt_waves must be finite and >= 0");
  }

  double a_max = 0.0;
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.inside(r, c)) continue;
      const double a = amplitude.at(r, c);
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("cgh-synth: amplitude must be finite and >= 0");
      }
      a_max = std::max(a_max, a);
    }
  if (a_max <= 0.0) throw std::invalid_argument("cgh-synth: amplitude grid is all zero");
  ref.amplitude = a_max;

  HologramFunction h{RealGrid(grid), RealGrid(grid), RealGrid(grid), ref, params};
  h.a_max = a_max;

  RealGrid intensity(grid);
  double grid_max = 0.0;
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.inside(r, c)) continue;
      const double i =
          recording_intensity(amplitude.at(r, c), phase.at(r, c), ref, ref.carrier(grid, r, c));
      intensity.at(r, c) = i;
      grid_max = std::max(grid_max, i);
      h.amplitude.at(r, c) = amplitude.at(r, c);
      h.phase.at(r, c) = phase.at(r, c);
    }
  h.i_max = params.i_max_mode == ImaxMode::analytic ? 4.0 * a_max * a_max : grid_max;

  const double ratio = 2.0 * a_max * a_max / h.i_max;  // sigma' / sigma
  if (params.scale_by == HologramParams::Scale::sigma) {
    h.sigma = params.scale;
    h.sigma_prime = params.scale * ratio;
  } else {
    h.sigma_prime = params.scale;
    h.sigma = params.scale / ratio;
  }

  const double gain = h.sigma / h.i_max;
  for (std::size_t k = 0; k < intensity.size(); ++k) {
    h.f[k] = std::min(h.sigma, gain * intensity[k]);
  }
  return h;
}

ComplexField slm_transmittance(const HologramFunction& hologram, const RealGrid* surface_error) {
  const GridGeometry& grid = hologram.geometry();
  if (surface_error && !(surface_error->geometry() == grid)) {
    throw std::invalid_argument("cgh-synth: surface error map geometry differs from hologram");
  }
  ComplexField t(grid, Plane::pupil);
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.inside(r, c)) continue;
      double delay = hologram.f.at(r, c);
      if (surface_error) delay += kTwoPi * surface_error->at(r, c);
      t.at(r, c) = std::polar(1.0, -delay);
    }
  return t;
}

double invert_j1(double target, double sigma_prime) {
  if (!(sigma_prime > 0.0 && sigma_prime <= kMaxPreconditionSigmaPrime)) {
    throw std::invalid_argument("invert_j1: sigma_prime must lie in (0, 1.8412], got " +
                                std::to_string(sigma_prime));
  }
  const double top = bessel_j(1, sigma_prime);
  if (!(target >= 0.0) || target > top * (1.0 + 1e-14)) {
    throw std::out_of_range("invert_j1: target " + std::to_string(target) +
                            " outside [0, J1(sigma')] = [0, " + std::to_string(top) + "]");
  }
  if (target == 0.0) return 0.0;
  if (target >= top) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (bessel_j(1, sigma_prime * mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PreconditionedRecording precondition(const RealGrid& target_amplitude,
                                     const RealGrid& target_phase, double sigma_prime,
                                     const RealGrid* wfe_map) {
  const GridGeometry& grid = target_amplitude.geometry();
  if (!(target_phase.geometry() == grid) || (wfe_map && !(wfe_map->geometry() == grid))) {
    throw std::invalid_argument("cgh-synth: precondition: input grids differ in geometry");
  }
  if (!(sigma_prime > 0.0 && sigma_prime <= kMaxPreconditionSigmaPrime)) {
    throw std::invalid_argument("cgh-synth: precondition: sigma_prime must lie in (0, 1.8412], got " +
                                std::to_string(sigma_prime));
  }
  double a_max = 0.0;
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.inside(r, c)) continue;
      const double a = target_amplitude.at(r, c);
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("cgh-synth: precondition: target amplitude must be finite and >= 0");
      }
      a_max = std::max(a_max, a);
    }
  if (a_max <= 0.0) throw std::invalid_argument("cgh-synth: precondition: target amplitude is all zero");

  const double top = bessel_j(1, sigma_prime);
  PreconditionedRecording out{RealGrid(grid), RealGrid(grid), top / a_max};
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.inside(r, c)) continue;
      const double target = std::min(top, out.scale * target_amplitude.at(r, c));
      const double ratio = invert_j1(target, sigma_prime);
      double phi = target_phase.at(r, c) - 0.5 * sigma_prime * ratio * ratio;
      if (wfe_map) phi -= kTwoPi * wfe_map->at(r, c);
      out.amplitude.at(r, c) = ratio;
      out.phase.at(r, c) = phi;
    }
  return out;
}

RecordingTarget recording_target(const ComplexField& target) {
  const GridGeometry& grid = target.geometry();
  RecordingTarget out{RealGrid(grid), RealGrid(grid)};
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.inside(r, c)) continue;
      const cplx v = target.at(r, c);
      const double a = std::abs(v);
      out.amplitude.at(r, c) = a;
      out.phase.at(r, c) = a < 1e-12 ? 0.0 : -std::arg(v);
    }
  return out;
}

}  // namespace oamcgh
