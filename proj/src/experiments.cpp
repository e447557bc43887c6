#include "oamcgh/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "oamcgh/bessel.hpp"
#include "oamcgh/diffraction.hpp"
#include "oamcgh/image_io.hpp"
#include "oamcgh/oam_states.hpp"

namespace oamcgh {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string tilt_tag(double tilt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "tilt%03.0f", tilt);
  return buf;
}

fs::path prepare_out_dir(const ExperimentConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec || !fs::is_directory(config.out_dir)) {
    throw std::runtime_error("experiments-cli: output directory '" + config.out_dir.string() +
                             "' is not writable");
  }
  return config.out_dir;
}

ComplexField masked(ComplexField field) {
  field.apply_aperture();
  return field;
}

void emit(CommandOutput& out, const fs::path& path, const GrayImage& image) {
  write_pgm(path, image);
  out.files.push_back(path);
}

double pipeline_sigma_prime(const ExperimentConfig& config) {
  return config.sigma_primes.empty() ? 1.72 : config.sigma_primes.front();
}

PipelineOptions pipeline_options(const ExperimentConfig& config, const GridGeometry& grid) {
  PipelineOptions opt;
  opt.i_max_mode = config.i_max_mode;
  opt.axis = config.tilt_axis;
  if (config.wfe_csv) {
    RealGrid w = read_real_csv(*config.wfe_csv, grid);
    opt.slm_surface_error = w;
    opt.wfe_map = std::move(w);
  }
  return opt;
}

void write_text(CommandOutput& out, const fs::path& path,
                const std::vector<SweepRecord>& records, const GridGeometry& grid) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("experiments-cli: cannot write '" + path.string() + "'");
  write_sweep_csv(os, records, grid.rows(), grid.cols());
  out.files.push_back(path);
}

}  // namespace

GridGeometry ExperimentConfig::grid() const {
  return GridGeometry::with_fraction(rows, cols, aperture_fraction);
}

void ExperimentConfig::validate() const {
  const GridGeometry g = grid();  // throws "grid: ..."
  StateLabel::parse(state);
  for (double s : sigma_primes) {
    if (!(s >= 0.0 && s <= kBesselMaxArgument)) {
      throw std::invalid_argument("cgh-synth: sigma_prime must lie in [0, 20], got " +
                                  std::to_string(s));
    }
  }
  for (double t : tilts) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw std::invalid_argument("diffraction-sim: tilt_waves must be finite and > 0");
    }
    const OrderSpec spec = order_spec(-1, ReferenceWave{t, 1.0, tilt_axis}, g);
    const int n = tilt_axis == TiltAxis::horizontal ? g.cols() : g.rows();
    if (std::abs(spec.offset_bins) + 0.5 * spec.window_width_bins > n / 2) {
      throw std::invalid_argument("diffraction-sim: tilt of " + std::to_string(t) +
                                  " waves puts the m = -1 window outside the far field");
    }
  }
  if (!(gamma > 0.0)) throw std::invalid_argument("experiments-cli: gamma must be > 0");
  if (!(fringe_tilt >= 0.0)) {
    throw std::invalid_argument("diffraction-sim: interferogram tilt must be >= 0");
  }
}

void ExperimentConfig::validate_pipeline(bool preconditioned) const {
  validate();
  const double s = pipeline_sigma_prime(*this);
  if (!(s > 0.0)) throw std::invalid_argument("cgh-synth: sigma_prime must be > 0");
  if (preconditioned && s > kMaxPreconditionSigmaPrime) {
    throw std::invalid_argument(
        "cgh-synth: preconditioning requires 0 < sigma_prime <= 1.8412, got " + std::to_string(s));
  }
}

std::vector<double> default_fig1_sigma_primes() { return {0.610, 1.84, 3.13, 3.83}; }

std::vector<double> default_fig2_sigma_primes() {
  std::vector<double> v;
  for (int k = 0; k <= 38; ++k) v.push_back(0.1 * k);
  for (double s : {0.61, 1.84, 3.13, 3.83}) v.push_back(s);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
          v.end());
  return v;
}

std::vector<double> default_fig3_tilts() { return {10.0, 50.0, 100.0}; }
std::vector<double> default_fig4_tilts() { return {10.0, 30.0, 50.0, 75.0, 100.0}; }

CommandOutput cmd_fig1(const ExperimentConfig& config) {
  config.validate();
  const fs::path dir = prepare_out_dir(config);
  const GridGeometry grid = config.grid();
  const MubTable table = build_mub_tables();
  const ComplexField theory = sample_state_on_grid(table.find(config.state), grid);
  const auto sigmas = config.sigma_primes.empty() ? default_fig1_sigma_primes() : config.sigma_primes;

  CommandOutput out;
  emit(out, dir / "fig1_theory_amplitude.pgm", amplitude_image(theory));
  emit(out, dir / "fig1_theory_phase.pgm", phase_image(theory));
  for (double s : sigmas) {
    const ComplexField generated = analytic_first_order(theory, s);
    const std::string tag = "fig1_sigma" + fixed(s, 3);
    emit(out, dir / (tag + "_amplitude.pgm"), amplitude_image(generated));
    emit(out, dir / (tag + "_phase.pgm"), phase_image(generated));
  }
  return out;
}

CommandOutput cmd_fig2(const ExperimentConfig& config) {
  config.validate();
  const fs::path dir = prepare_out_dir(config);
  SigmaSweepOptions opt;
  opt.grid = config.grid();
  opt.quadrature = config.quadrature;
  const auto sigmas = config.sigma_primes.empty() ? default_fig2_sigma_primes() : config.sigma_primes;

  CommandOutput out;
  out.records = sweep_sigma(build_mub_tables().all(), sigmas, opt);
  write_text(out, dir / "fig2.csv", out.records, opt.grid);
  return out;
}

CommandOutput cmd_fig3(const ExperimentConfig& config) {
  config.validate_pipeline(config.precondition.value_or(true));
  const fs::path dir = prepare_out_dir(config);
  const GridGeometry grid = config.grid();
  const SuperpositionState state = build_mub_tables().find(config.state);
  const bool pre = config.precondition.value_or(true);
  const double s = pipeline_sigma_prime(config);
  const PipelineOptions opt = pipeline_options(config, grid);
  const auto tilts = config.tilts.empty() ? default_fig3_tilts() : config.tilts;

  CommandOutput out;
  const ComplexField theory = sample_state_on_grid(state, grid);
  emit(out, dir / "fig3_theory_amplitude.pgm", amplitude_image(theory));
  emit(out, dir / "fig3_theory_phase.pgm", phase_image(theory));
  for (double t : tilts) {
    const PipelineResult res = simulate_pipeline(state, s, t, pre, grid, opt);
    const std::string tag = "fig3_" + tilt_tag(t);
    const ComplexField generated = masked(res.generated);
    emit(out, dir / (tag + "_far_field.pgm"), far_field_image(res.far, config.gamma));
    emit(out, dir / (tag + "_amplitude.pgm"), amplitude_image(generated));
    emit(out, dir / (tag + "_phase.pgm"), phase_image(generated));
    SweepRecord rec;
    rec.axis_value = t;
    rec.points.push_back(SweepPoint{state.label(), res.report.probability, pre, t});
    out.records.push_back(rec);
  }
  return out;
}

CommandOutput cmd_fig4(const ExperimentConfig& config) {
  config.validate_pipeline(true);
  const fs::path dir = prepare_out_dir(config);
  const GridGeometry grid = config.grid();
  const SuperpositionState state = build_mub_tables().find(config.state);
  const auto tilts = config.tilts.empty() ? default_fig4_tilts() : config.tilts;

  CommandOutput out;
  out.records = sweep_tilt(state, tilts, pipeline_sigma_prime(config), grid,
                           pipeline_options(config, grid));
  write_text(out, dir / "fig4.csv", out.records, grid);
  return out;
}

CommandOutput cmd_fig6(const ExperimentConfig& config) {
  config.validate();
  const fs::path dir = prepare_out_dir(config);
  const GridGeometry grid = config.grid();
  const ComplexField theory = sample_state_on_grid(build_mub_tables().find(config.state), grid);

  RealGrid irradiance(grid);
  for (std::size_t i = 0; i < theory.size(); ++i) irradiance[i] = std::norm(theory[i]);

  CommandOutput out;
  emit(out, dir / "fig6_irradiance.pgm", real_image(irradiance));
  emit(out, dir / "fig6_interferogram_vertical.pgm",
       real_image(synth_interferogram(theory, config.fringe_tilt, InterferogramAxis::vertical)));
  emit(out, dir / "fig6_interferogram_horizontal.pgm",
       real_image(synth_interferogram(theory, config.fringe_tilt, InterferogramAxis::horizontal)));
  return out;
}

bool selftest(std::ostream& log) {
  bool all = true;
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    log << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << '\n';
    all = all && ok;
  };

  const MubTable table = build_mub_tables();
  const auto states = table.all();
  double gram_err = 0.0;
  for (const auto& a : states)
    for (const auto& b : states) {
      const double p = std::norm(a.inner(b));
      const double expect = a.label() == b.label() ? 1.0
                            : a.label().basis == b.label().basis ? 0.0
                                                                 : 1.0 / 3.0;
      gram_err = std::max(gram_err, std::abs(p - expect));
    }
  check("mub gram matrix", gram_err < 1e-12, "max error " + std::to_string(gram_err));

  const double eta = std::pow(bessel_j(1, kJ1PeakArgument), 2);
  check("peak efficiency", std::abs(eta - 0.339) <= 1e-3, "J1^2 = " + std::to_string(eta));

  const GridGeometry grid(128, 128, 115);
  const ComplexField psi = sample_state_on_grid(table.find("c3"), grid);
  const ComplexField round = back_propagate(far_field(psi));
  double rt = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) rt = std::max(rt, std::abs(round[i] - psi[i]));
  check("transform round trip", rt < 1e-10, "max error " + std::to_string(rt));

  const double p = simulate_pipeline(table.find("c3"), 1.72, 30, true, grid).report.probability;
  check("preconditioned pipeline", p > 0.95, "P = " + std::to_string(p));
  return all;
}

}  // namespace oamcgh
