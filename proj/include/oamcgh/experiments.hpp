#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oamcgh/cgh_synth.hpp"
#include "oamcgh/fidelity.hpp"
#include "oamcgh/grid.hpp"

namespace oamcgh {

// Settings shared by the figure commands. Empty lists and unset optionals
// take the per-command defaults.
struct ExperimentConfig {
  int rows = 768;
  int cols = 1024;
  double aperture_fraction = 0.9;
  std::vector<double> sigma_primes;
  std::vector<double> tilts;
  std::string state = "c3";
  std::filesystem::path out_dir = "out";
  double gamma = 0.3;
  ImaxMode i_max_mode = ImaxMode::analytic;
  std::optional<bool> precondition;
  Quadrature quadrature = Quadrature::cartesian;
  TiltAxis tilt_axis = TiltAxis::horizontal;
  double fringe_tilt = 10.0;
  // Optional SLM wavefront error in waves (CSV grid), applied to the SLM and
  // compensated when preconditioning.
  std::optional<std::filesystem::path> wfe_csv;

  GridGeometry grid() const;
  // Throws std::invalid_argument naming the violated precondition.
  void validate() const;
  // validate() plus the pipeline sigma' (first list entry, default 1.72).
  void validate_pipeline(bool preconditioned) const;
};

std::vector<double> default_fig1_sigma_primes();
std::vector<double> default_fig2_sigma_primes();
std::vector<double> default_fig3_tilts();
std::vector<double> default_fig4_tilts();

struct CommandOutput {
  std::vector<std::filesystem::path> files;
  std::vector<SweepRecord> records;
};

// Theory amplitude/phase pair plus one generated pair per sigma'.
CommandOutput cmd_fig1(const ExperimentConfig& config);
// P(sigma') for all 12 states -> fig2.csv.
CommandOutput cmd_fig2(const ExperimentConfig& config);
// Per tilt: far-field image and isolated-order amplitude/phase images.
CommandOutput cmd_fig3(const ExperimentConfig& config);
// P(tilt) with and without preconditioning -> fig4.csv.
CommandOutput cmd_fig4(const ExperimentConfig& config);
// Irradiance and vertical/horizontal interferograms of the theory field.
CommandOutput cmd_fig6(const ExperimentConfig& config);

// Quick end-to-end checks on a small grid; one line per check to `log`.
bool selftest(std::ostream& log);

}  // namespace oamcgh
