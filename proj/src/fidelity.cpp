#include "oamcgh/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "oamcgh/bessel.hpp"
#include "oamcgh/diffraction.hpp"
#include "oamcgh/parallel.hpp"

namespace oamcgh {

namespace {

struct Accumulated {
  cplx cross = 0.0;
  double power_t = 0.0;
  double power_h = 0.0;
};

FidelityReport finish(const Accumulated& acc, const RunMetadata& meta) {
  if (!(acc.power_t > 0.0) || !(acc.power_h > 0.0)) {
    throw std::invalid_argument("fidelity: zero-norm field in inner product");
  }
  FidelityReport rep;
  rep.norm_t = std::sqrt(acc.power_t);
  rep.norm_h = std::sqrt(acc.power_h);
  rep.inner = acc.cross / (rep.norm_t * rep.norm_h);
  rep.probability = std::norm(rep.inner);
  rep.state = meta.state;
  rep.sigma_prime = meta.sigma_prime;
  rep.tilt_waves = meta.tilt_waves;
  rep.precondition = meta.precondition;
  return rep;
}

Accumulated accumulate_aperture(const ComplexField& theory, const ComplexField& generated) {
  if (!(theory.geometry() == generated.geometry())) {
    throw std::invalid_argument("fidelity: fields have different geometry");
  }
  if (theory.plane() != Plane::pupil || generated.plane() != Plane::pupil) {
    throw std::invalid_argument("fidelity: both fields must be in the pupil plane");
  }
  const GridGeometry& grid = theory.geometry();
  Accumulated acc;
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c) {
      if (!grid.inside(r, c)) continue;
      const cplx t = theory.at(r, c);
      const cplx h = generated.at(r, c);
      acc.cross += std::conj(t) * h;
      acc.power_t += std::norm(t);
      acc.power_h += std::norm(h);
    }
  return acc;
}

// Theory samples of one state in quadrature order, with the recorded
// amplitude ratio a/a_max and phase -arg psi.
struct QuadratureSamples {
  std::vector<cplx> theory;
  std::vector<double> ratio;
  std::vector<double> phase;
};

QuadratureSamples quadrature_samples(const SuperpositionState& state,
                                     const SigmaSweepOptions& opt) {
  QuadratureSamples q;
  if (opt.quadrature == Quadrature::azimuthal) {
    for (int j = 0; j < opt.azimuthal_samples; ++j)
      q.theory.push_back(eval_wavefunction(state, kTwoPi * j / opt.azimuthal_samples));
  } else {
    const GridGeometry& grid = opt.grid;
    for (int r = 0; r < grid.rows(); ++r)
      for (int c = 0; c < grid.cols(); ++c)
        if (grid.inside(r, c)) q.theory.push_back(eval_wavefunction(state, grid.theta(r, c)));
  }
  double a_max = 0.0;
  for (const auto& v : q.theory) a_max = std::max(a_max, std::abs(v));
  for (const auto& v : q.theory) {
    const double a = std::abs(v);
    q.ratio.push_back(a / a_max);
    q.phase.push_back(a < 1e-12 ? 0.0 : -std::arg(v));
  }
  return q;
}

}  // namespace

cplx inner_product(const ComplexField& theory, const ComplexField& generated) {
  return finish(accumulate_aperture(theory, generated), {}).inner;
}

FidelityReport probability(const ComplexField& theory, const ComplexField& generated,
                           const RunMetadata& meta) {
  return finish(accumulate_aperture(theory, generated), meta);
}

FidelityReport probability(std::span<const cplx> theory, std::span<const cplx> generated,
                           const RunMetadata& meta) {
  if (theory.size() != generated.size()) {
    throw std::invalid_argument("fidelity: sample counts differ");
  }
  Accumulated acc;
  for (std::size_t k = 0; k < theory.size(); ++k) {
    acc.cross += std::conj(theory[k]) * generated[k];
    acc.power_t += std::norm(theory[k]);
    acc.power_h += std::norm(generated[k]);
  }
  return finish(acc, meta);
}

double SweepRecord::basis_mean(int basis) const {
  double sum = 0.0;
  int n = 0;
  for (const auto& p : points)
    if (p.state.basis == basis) {
      sum += p.probability;
      ++n;
    }
  if (n == 0) throw std::out_of_range("fidelity: no points for basis " + std::to_string(basis));
  return sum / n;
}

const SweepPoint& SweepRecord::point(const StateLabel& state, bool precondition) const {
  for (const auto& p : points)
    if (p.state == state && p.precondition == precondition) return p;
  throw std::out_of_range("fidelity: no point for state " + state.name());
}

std::vector<SweepRecord> sweep_sigma(const std::vector<SuperpositionState>& states,
                                     const std::vector<double>& sigma_primes,
                                     const SigmaSweepOptions& options) {
  for (std::size_t i = 0; i < sigma_primes.size(); ++i) {
    const double s = sigma_primes[i];
    if (!(s >= 0.0 && s <= kBesselMaxArgument)) {
      throw std::invalid_argument("fidelity: sigma_prime must lie in [0, 20], got " +
                                  std::to_string(s));
    }
    if (i > 0 && !(s > sigma_primes[i - 1])) {
      throw std::invalid_argument("fidelity: sigma_prime values must be strictly increasing");
    }
  }
  if (options.quadrature == Quadrature::azimuthal &&
      (options.azimuthal_samples <= 0 || options.azimuthal_samples % 3 != 0)) {
    throw std::invalid_argument("fidelity: azimuthal sample count must be a positive multiple of 3");
  }

  std::vector<QuadratureSamples> samples;
  for (const auto& s : states) samples.push_back(quadrature_samples(s, options));

  std::vector<SweepRecord> records(sigma_primes.size());
  parallel_for(sigma_primes.size(), [&](std::size_t i) {
    const double s = sigma_primes[i];
    SweepRecord& rec = records[i];
    rec.axis_value = s;
    std::vector<cplx> generated;
    for (std::size_t k = 0; k < states.size(); ++k) {
      const QuadratureSamples& q = samples[k];
      generated.resize(q.theory.size());
      for (std::size_t j = 0; j < q.theory.size(); ++j) {
        const double r = q.ratio[j];
        // J1(s r) / s is a positive rescaling (P is scale invariant) with
        // the finite limit r / 2 at s = 0.
        const double amp = s > 0.0 ? bessel_j(1, s * r) / s : 0.5 * r;
        const double phi = analytic_order_phase(-1, q.phase[j], r, s, 0.0);
        generated[j] = std::polar(amp, -phi);
      }
      const FidelityReport rep = probability(
          q.theory, generated, RunMetadata{states[k].label(), s, options.nominal_tilt_waves, false});
      rec.points.push_back(
          SweepPoint{states[k].label(), rep.probability, false, options.nominal_tilt_waves});
    }
  });
  return records;
}

std::vector<SweepRecord> sweep_tilt(const SuperpositionState& state,
                                    const std::vector<double>& tilts, double sigma_prime,
                                    const GridGeometry& grid, const PipelineOptions& options) {
  for (std::size_t i = 1; i < tilts.size(); ++i)
    if (!(tilts[i] > tilts[i - 1])) {
      throw std::invalid_argument("fidelity: tilt values must be strictly increasing");
    }
  std::vector<SweepRecord> records(tilts.size());
  std::vector<SweepPoint> flat(2 * tilts.size());
  parallel_for(flat.size(), [&](std::size_t k) {
    const double tilt = tilts[k / 2];
    const bool pre = (k % 2) == 1;
    const PipelineResult res = simulate_pipeline(state, sigma_prime, tilt, pre, grid, options);
    flat[k] = SweepPoint{state.label(), res.report.probability, pre, tilt};
  });
  for (std::size_t i = 0; i < tilts.size(); ++i) {
    records[i].axis_value = tilts[i];
    records[i].points = {flat[2 * i], flat[2 * i + 1]};
  }
  return records;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records, int grid_rows,
                     int grid_cols) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << "axis_value,basis_id,member_id,P,precondition_flag,grid_rows,grid_cols,tilt_waves\n";
  for (const auto& rec : records)
    for (const auto& p : rec.points) {
      os << std::setprecision(10) << rec.axis_value << ',' << p.state.basis << ','
         << p.state.member << ',' << std::setprecision(15) << p.probability << ','
         << (p.precondition ? 1 : 0) << ',' << grid_rows << ',' << grid_cols << ','
         << std::setprecision(10) << p.tilt_waves << '\n';
    }
  os.flags(flags);
  os.precision(prec);
}

}  // namespace oamcgh
