#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "oamcgh/grid.hpp"

namespace oamcgh {

// Orbital angular momentum quantum number; the mode carries exp(i*l*theta).
struct OamIndex {
  int l = 0;
  auto operator<=>(const OamIndex&) const = default;
};

// Basis 0 holds the pure states; bases 1-3 the superpositions.
struct StateLabel {
  int basis = 0;
  char member = 'a';  // 'a', 'b' or 'c'

  // "a", "b", "c" for basis 0; "a1".."c3" otherwise.
  std::string name() const;
  static StateLabel parse(const std::string& name);
  bool operator==(const StateLabel&) const = default;
};

// Normalized superposition over a set of OAM modes.
class SuperpositionState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  // Throws std::invalid_argument when sizes differ, modes repeat, or the
  // squared norm deviates from 1 by more than kNormTolerance.
  SuperpositionState(std::vector<OamIndex> modes, std::vector<cplx> coefficients,
                     StateLabel label = {});

  static SuperpositionState pure(int l, StateLabel label = {});

  const std::vector<OamIndex>& modes() const { return modes_; }
  const std::vector<cplx>& coefficients() const { return coefficients_; }
  const StateLabel& label() const { return label_; }
  std::string name() const { return label_.name(); }

  // Coefficient of mode l, zero when absent.
  cplx coefficient(int l) const;
  // Analytic <this|other> from the coefficient vectors.
  cplx inner(const SuperpositionState& other) const;

 private:
  std::vector<OamIndex> modes_;
  std::vector<cplx> coefficients_;
  StateLabel label_;
};

// The four mutually unbiased bases of the 3-dimensional OAM space spanned by
// |1>, |0>, |-1>.
struct MubTable {
  static constexpr int kBases = 4;
  static constexpr int kDimension = 3;

  std::array<std::vector<SuperpositionState>, kBases> bases;
  cplx root_of_unity;  // exp(i 2 pi / 3)

  const SuperpositionState& state(int basis, int member) const;
  const SuperpositionState& state(const StateLabel& label) const;
  const SuperpositionState& find(const std::string& name) const;
  // All 12 states, basis-major.
  std::vector<SuperpositionState> all() const;
};

// Mode indices assigned to |a>, |b>, |c>.
inline constexpr std::array<int, 3> kBasisModes = {1, 0, -1};

MubTable build_mub_tables();

cplx eval_wavefunction(const SuperpositionState& state, double theta);

struct AmplitudePhase {
  double amplitude = 0.0;
  double phase = 0.0;  // arg of the wavefunction
  bool phase_defined = true;
};

// A = |psi(theta)|, phase = arg psi(theta). Below 1e-12 the phase is a
// singularity: reported as 0 and flagged undefined.
AmplitudePhase amplitude_phase(const SuperpositionState& state, double theta);

struct AzimuthalProfile {
  std::vector<double> theta;
  std::vector<double> amplitude;
  std::vector<double> phase;
};

// Samples theta_j = 2 pi j / n, j = 0..n-1.
AzimuthalProfile sample_azimuthal_profile(const SuperpositionState& state, int n);

// psi(theta) inside the aperture, zero outside. The center sample (theta
// undefined) uses atan2(0, 0) = 0.
ComplexField sample_state_on_grid(const SuperpositionState& state, const GridGeometry& grid);

// CSV: basis_id,member_id,re(c1),im(c1),re(c0),im(c0),re(c-1),im(c-1)
void write_states_csv(std::ostream& os, const MubTable& table);
SuperpositionState parse_state_csv_row(const std::string& line);

}  // namespace oamcgh
