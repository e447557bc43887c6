#include "oamcgh/oam_states.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace oamcgh {

std::string StateLabel::name() const {
  std::string s(1, member);
  if (basis != 0) s += std::to_string(basis);
  return s;
}

StateLabel StateLabel::parse(const std::string& name) {
  if (name.empty() || name.size() > 2 || name[0] < 'a' || name[0] > 'c') {
    throw std::invalid_argument("oam-states: unknown state name '" + name + "'");
  }
  StateLabel label{0, name[0]};
  if (name.size() == 2) {
    if (name[1] < '1' || name[1] > '3') throw std::invalid_argument("oam-states: unknown state name '" + name + "'");
    label.basis = name[1] - '0';
  }
  return label;
}

SuperpositionState::SuperpositionState(std::vector<OamIndex> modes, std::vector<cplx> coefficients,
                                       StateLabel label)
    : modes_(std::move(modes)), coefficients_(std::move(coefficients)), label_(label) {
  if (modes_.size() != coefficients_.size() || modes_.empty()) {
    throw std::invalid_argument("oam-states: need one coefficient per mode");
  }
  auto sorted = modes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("oam-states: repeated OAM mode");
  }
  double norm = 0.0;
  for (const auto& c : coefficients_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("oam-states: non-finite coefficient");
    norm += std::norm(c);
  }
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("oam-states: squared norm is " + std::to_string(norm) + ", expected 1");
  }
}

SuperpositionState SuperpositionState::pure(int l, StateLabel label) {
  return SuperpositionState({OamIndex{l}}, {cplx(1.0, 0.0)}, label);
}

cplx SuperpositionState::coefficient(int l) const {
  for (std::size_t k = 0; k < modes_.size(); ++k)
    if (modes_[k].l == l) return coefficients_[k];
  return 0.0;
}

cplx SuperpositionState::inner(const SuperpositionState& other) const {
  cplx sum = 0.0;
  for (std::size_t k = 0; k < modes_.size(); ++k)
    sum += std::conj(coefficients_[k]) * other.coefficient(modes_[k].l);
  return sum;
}

const SuperpositionState& MubTable::state(int basis, int member) const {
  if (basis < 0 || basis >= kBases || member < 0 || member >= kDimension) {
    throw std::out_of_range("oam-states: state index out of range");
  }
  return bases[basis][member];
}

const SuperpositionState& MubTable::state(const StateLabel& label) const {
  return state(label.basis, label.member - 'a');
}

const SuperpositionState& MubTable::find(const std::string& name) const {
  return state(StateLabel::parse(name));
}

std::vector<SuperpositionState> MubTable::all() const {
  std::vector<SuperpositionState> out;
  for (const auto& basis : bases) out.insert(out.end(), basis.begin(), basis.end());
  return out;
}

MubTable build_mub_tables() {
  const cplx z = std::polar(1.0, kTwoPi / 3.0);
  const cplx z2 = z * z;
  const cplx one = 1.0;

  // Coefficients on (|a>, |b>, |c>) before the 1/sqrt(3) normalization.
  using Row = std::array<cplx, 3>;
  const std::array<std::array<Row, 3>, 3> superpositions = {{
      {{{one, one, one}, {one, z, z2}, {one, z2, z}}},
      {{{one, one, z}, {one, z, one}, {one, z2, z2}}},
      {{{one, one, z2}, {one, z, z}, {one, z2, one}}},
  }};

  std::vector<OamIndex> modes;
  for (int l : kBasisModes) modes.push_back(OamIndex{l});

  MubTable table;
  table.root_of_unity = z;
  for (int m = 0; m < 3; ++m) {
    std::vector<cplx> c(3, 0.0);
    c[m] = 1.0;
    table.bases[0].emplace_back(modes, c, StateLabel{0, static_cast<char>('a' + m)});
  }
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  for (int b = 1; b < 4; ++b) {
    for (int m = 0; m < 3; ++m) {
      const Row& row = superpositions[b - 1][m];
      std::vector<cplx> c = {row[0] * inv_sqrt3, row[1] * inv_sqrt3, row[2] * inv_sqrt3};
      table.bases[b].emplace_back(modes, c, StateLabel{b, static_cast<char>('a' + m)});
    }
  }
  return table;
}

cplx eval_wavefunction(const SuperpositionState& state, double theta) {
  cplx sum = 0.0;
  const auto& modes = state.modes();
  const auto& coeffs = state.coefficients();
  for (std::size_t k = 0; k < modes.size(); ++k)
    sum += coeffs[k] * std::polar(1.0, modes[k].l * theta);
  return sum;
}

AmplitudePhase amplitude_phase(const SuperpositionState& state, double theta) {
  const cplx v = eval_wavefunction(state, theta);
  const double a = std::abs(v);
  if (a < 1e-12) return {a, 0.0, false};
  return {a, std::atan2(v.imag(), v.real()), true};
}

AzimuthalProfile sample_azimuthal_profile(const SuperpositionState& state, int n) {
  if (n <= 0) throw std::invalid_argument("oam-states: sample count must be positive");
  AzimuthalProfile p;
  p.theta.resize(n);
  p.amplitude.resize(n);
  p.phase.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = kTwoPi * j / n;
    const auto ap = amplitude_phase(state, t);
    p.theta[j] = t;
    p.amplitude[j] = ap.amplitude;
    p.phase[j] = ap.phase;
  }
  return p;
}

ComplexField sample_state_on_grid(const SuperpositionState& state, const GridGeometry& grid) {
  ComplexField field(grid, Plane::pupil);
  for (int r = 0; r < grid.rows(); ++r)
    for (int c = 0; c < grid.cols(); ++c)
      if (grid.inside(r, c)) field.at(r, c) = eval_wavefunction(state, grid.theta(r, c));
  return field;
}

void write_states_csv(std::ostream& os, const MubTable& table) {
  os << "basis_id,member_id,re_c1,im_c1,re_c0,im_c0,re_cm1,im_cm1\n";
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  for (const auto& s : table.all()) {
    os << s.label().basis << ',' << s.label().member;
    for (int l : kBasisModes) {
      const cplx c = s.coefficient(l);
      os << ',' << c.real() << ',' << c.imag();
    }
    os << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

SuperpositionState parse_state_csv_row(const std::string& line) {
  std::stringstream ss(line);
  std::string cell;
  std::vector<std::string> cells;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (cells.size() != 8 || cells[1].size() != 1) {
    throw std::invalid_argument("oam-states: state csv: expected 8 fields, got '" + line + "'");
  }
  const StateLabel label{std::stoi(cells[0]), cells[1][0]};
  std::vector<OamIndex> modes;
  std::vector<cplx> coeffs;
  for (int k = 0; k < 3; ++k) {
    modes.push_back(OamIndex{kBasisModes[k]});
    coeffs.emplace_back(std::stod(cells[2 + 2 * k]), std::stod(cells[3 + 2 * k]));
  }
  return SuperpositionState(std::move(modes), std::move(coeffs), label);
}

}  // namespace oamcgh
