// Reproduces the holographic OAM state-generation figures.
//
//   oam_cgh fig1|fig2|fig3|fig4|fig6|selftest [options]
//
// Every option may also be given in a key = value file via --config. For the
// output directory the command line wins over OAM_CGH_OUT, which wins over
// the config file.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "oamcgh/experiments.hpp"

namespace {

void parse_grid(const std::string& text, oamcgh::ExperimentConfig& cfg) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--grid", "expected ROWSxCOLS, got " + text);
  try {
    cfg.rows = std::stoi(text.substr(0, x));
    cfg.cols = std::stoi(text.substr(x + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid", "expected ROWSxCOLS, got " + text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-only CGH simulation of OAM mutually-unbiased-basis states"};
  app.set_config("--config", "", "key = value configuration file");
  app.require_subcommand(1);
  app.fallthrough();

  oamcgh::ExperimentConfig cfg;
  std::string grid = "768x1024";
  std::string out = cfg.out_dir.string();
  std::string wfe;
  bool precondition = true;

  const std::map<std::string, oamcgh::ImaxMode> imax_modes{
      {"analytic", oamcgh::ImaxMode::analytic}, {"grid-max", oamcgh::ImaxMode::grid_max}};
  const std::map<std::string, oamcgh::Quadrature> quadratures{
      {"cartesian", oamcgh::Quadrature::cartesian}, {"azimuthal", oamcgh::Quadrature::azimuthal}};
  const std::map<std::string, oamcgh::TiltAxis> axes{
      {"horizontal", oamcgh::TiltAxis::horizontal}, {"vertical", oamcgh::TiltAxis::vertical}};

  app.add_option("--grid", grid, "grid size ROWSxCOLS")->capture_default_str();
  app.add_option("--aperture-fraction", cfg.aperture_fraction,
                 "aperture diameter as a fraction of the short grid side")
      ->capture_default_str();
  app.add_option("--sigma-prime", cfg.sigma_primes,
                 "sigma' values (fig1/fig2 sweep list; first entry drives fig3/fig4)")
      ->delimiter(',');
  app.add_option("--tilt", cfg.tilts, "reference tilts in waves across the aperture")->delimiter(',');
  auto* pre_opt = app.add_flag("--precondition,!--no-precondition", precondition,
                               "precondition the hologram (fig3)");
  app.add_option("--out", out, "output directory (env OAM_CGH_OUT overrides the config file)")
      ->capture_default_str();
  app.add_option("--gamma", cfg.gamma, "far-field display exponent")->capture_default_str();
  app.add_option("--imax-mode", cfg.i_max_mode, "analytic | grid-max")
      ->transform(CLI::CheckedTransformer(imax_modes, CLI::ignore_case));
  app.add_option("--quadrature", cfg.quadrature, "fig2 quadrature: cartesian | azimuthal")
      ->transform(CLI::CheckedTransformer(quadratures, CLI::ignore_case));
  app.add_option("--tilt-axis", cfg.tilt_axis, "carrier direction: horizontal | vertical")
      ->transform(CLI::CheckedTransformer(axes, CLI::ignore_case));
  app.add_option("--state", cfg.state, "state name: a b c a1 .. c3")->capture_default_str();
  app.add_option("--fringe-tilt", cfg.fringe_tilt, "fig6 interferometer tilt in waves")
      ->capture_default_str();
  app.add_option("--wfe", wfe, "SLM wavefront error CSV grid in waves (fig3/fig4)");

  auto* fig1 = app.add_subcommand("fig1", "amplitude/phase images vs sigma' (analytic m = -1 order)");
  auto* fig2 = app.add_subcommand("fig2", "P vs sigma' for all 12 states -> fig2.csv");
  auto* fig3 = app.add_subcommand("fig3", "far-field and isolated-order images vs tilt");
  auto* fig4 = app.add_subcommand("fig4", "P vs tilt with/without preconditioning -> fig4.csv");
  auto* fig6 = app.add_subcommand("fig6", "irradiance and interferograms");
  auto* self = app.add_subcommand("selftest", "quick consistency checks");

  CLI11_PARSE(app, argc, argv);

  try {
    parse_grid(grid, cfg);
    bool out_on_command_line = false;
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      out_on_command_line = out_on_command_line || arg == "--out" || arg.rfind("--out=", 0) == 0;
    }
    const char* env_out = std::getenv("OAM_CGH_OUT");
    if (!out_on_command_line && env_out && *env_out) out = env_out;
    cfg.out_dir = out;
    if (pre_opt->count() > 0) cfg.precondition = precondition;
    if (!wfe.empty()) cfg.wfe_csv = wfe;

    if (self->parsed()) return oamcgh::selftest(std::cout) ? 0 : 1;

    oamcgh::CommandOutput result;
    if (fig1->parsed()) result = oamcgh::cmd_fig1(cfg);
    if (fig2->parsed()) result = oamcgh::cmd_fig2(cfg);
    if (fig3->parsed()) result = oamcgh::cmd_fig3(cfg);
    if (fig4->parsed()) result = oamcgh::cmd_fig4(cfg);
    if (fig6->parsed()) result = oamcgh::cmd_fig6(cfg);

    if (!fig2->parsed())
      for (const auto& rec : result.records)
        for (const auto& p : rec.points)
          std::cout << "axis=" << rec.axis_value << " state=" << p.state.name()
                    << " precondition=" << p.precondition << " P=" << p.probability << '\n';
    for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
