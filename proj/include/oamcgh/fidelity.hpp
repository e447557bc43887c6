#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "oamcgh/cgh_synth.hpp"
#include "oamcgh/grid.hpp"
#include "oamcgh/oam_states.hpp"

namespace oamcgh {

struct FidelityReport {
  cplx inner;  // normalized <psi_t|psi_h>
  double norm_t = 0.0;
  double norm_h = 0.0;
  double probability = 0.0;  // |inner|^2

  StateLabel state;
  double sigma_prime = 0.0;
  double tilt_waves = 0.0;
  bool precondition = false;
};

struct RunMetadata {
  StateLabel state;
  double sigma_prime = 0.0;
  double tilt_waves = 0.0;
  bool precondition = false;
};

// Normalized inner product summed over aperture samples in row-major order.
// Throws std::invalid_argument on mismatched geometry, non-pupil input or a
// zero norm.
cplx inner_product(const ComplexField& theory, const ComplexField& generated);

FidelityReport probability(const ComplexField& theory, const ComplexField& generated,
                           const RunMetadata& meta = {});

// Same metric on a uniform azimuthal sampling; valid for fields that depend
// on theta only, where the radial integral cancels in the normalization.
FidelityReport probability(std::span<const cplx> theory, std::span<const cplx> generated,
                           const RunMetadata& meta = {});

struct SweepPoint {
  StateLabel state;
  double probability = 0.0;
  bool precondition = false;
  double tilt_waves = 0.0;
};

struct SweepRecord {
  double axis_value = 0.0;  // sigma' or tilt
  std::vector<SweepPoint> points;

  // Mean P over the members of one basis.
  double basis_mean(int basis) const;
  const SweepPoint& point(const StateLabel& state, bool precondition = false) const;
};

enum class Quadrature {
  cartesian,  // aperture samples of the grid
  azimuthal,  // uniform theta samples, count divisible by 3
};

struct SigmaSweepOptions {
  Quadrature quadrature = Quadrature::cartesian;
  GridGeometry grid = GridGeometry::standard();
  int azimuthal_samples = 3 * 2048;
  double nominal_tilt_waves = 100.0;
};

// P(sigma') of the analytic m = -1 field with I_max = 4 a_max^2 for every
// state. sigma' = 0 uses the small-argument limit J1(x) ~ x/2.
// sigma' values must be strictly increasing and within [0, 20].
std::vector<SweepRecord> sweep_sigma(const std::vector<SuperpositionState>& states,
                                     const std::vector<double>& sigma_primes,
                                     const SigmaSweepOptions& options = {});

struct PipelineOptions;

// simulate_pipeline at every tilt for both precondition flags; one record per
// tilt holding the unpreconditioned point then the preconditioned one.
std::vector<SweepRecord> sweep_tilt(const SuperpositionState& state,
                                    const std::vector<double>& tilts, double sigma_prime,
                                    const GridGeometry& grid, const PipelineOptions& options);

// axis_value,basis_id,member_id,P,precondition_flag,grid_rows,grid_cols,tilt_waves
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records, int grid_rows,
                     int grid_cols);

}  // namespace oamcgh
