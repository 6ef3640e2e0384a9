#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

using namespace qsurv;
using namespace qsurv::cli;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string format;
  int precision = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool config_required) {
  auto* c = cmd->add_option("--config", opts.config_path, "Run configuration JSON");
  if (config_required) c->required();
  cmd->add_option("--out", opts.out_path, "Output path ('-' for stdout)");
  cmd->add_option("--format", opts.format, "Output format (csv|json)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--precision", opts.precision, "Significant digits (1..17)")
      ->check(CLI::Range(1, 17));
}

RunConfig resolve_config(const CommonOptions& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) cfg = load_run_config(opts.config_path);
  if (!opts.format.empty()) cfg.output.format = opts.format;
  if (!opts.out_path.empty()) cfg.output.path = opts.out_path;
  if (opts.precision > 0) cfg.output.precision = opts.precision;
  return cfg;
}

int emit(const Report& report, const OutputConfig& output) {
  const std::string text = output.format == "json" ? to_json(report, output.precision)
                                                   : to_csv(report, output.precision);
  if (output.path == "-" || output.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output.path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output path '" + output.path + "'");
    out << text;
  }
  if (!report.all_checks_passed()) {
    std::cerr << "error: a numerical footer check failed\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projective quantum measurement toolkit with survival-effect analysis"};
  app.require_subcommand(1);

  CommonOptions measure_opts, fig1_opts, survival_opts, asym_opts, scat_opts;
  std::string observable_path, model_path;
  std::vector<double> eps0_list, sigma_list, nu_list, eps_list;
  double xi_min = -3.0, xi_max = 3.0, xi_step = 0.01;

  CLI::App* measure = app.add_subcommand("measure", "Projective measurement of an observable fixture");
  add_common(measure, measure_opts, true);
  measure->add_option("--observable", observable_path, "Observable fixture JSON")->required();

  CLI::App* fig1 = app.add_subcommand("fig1", "Dimensionless survival position profile");
  add_common(fig1, fig1_opts, false);
  fig1->add_option("--eps0", eps0_list, "Profile parameters (default 0 0.1 0.2)");
  fig1->add_option("--xi-min", xi_min, "Lower xi bound");
  fig1->add_option("--xi-max", xi_max, "Upper xi bound");
  fig1->add_option("--xi-step", xi_step, "xi step");

  CLI::App* survival = app.add_subcommand("survival", "Position/momentum densities and uncertainty");
  add_common(survival, survival_opts, true);

  CLI::App* asym = app.add_subcommand("asymptotics", "Tail-moment asymptotics per sigma");
  add_common(asym, asym_opts, true);
  asym->add_option("--sigma", sigma_list, "Sigma values (default 9 16 25 36)");

  CLI::App* scat = app.add_subcommand("scattering-demo", "Wave operators and S-matrix diagnostics");
  add_common(scat, scat_opts, false);
  scat->add_option("--model", model_path, "Scattering model fixture JSON")->required();
  scat->add_option("--nu", nu_list, "Damping values (default 1e-2/1e-3/1e-4 x spread)");
  scat->add_option("--eps", eps_list, "Double-limit cell sizes (default 0.04 .. 0.005)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*measure) {
      const RunConfig cfg = resolve_config(measure_opts);
      return emit(cmd_measure(cfg, load_observable_fixture(observable_path)), cfg.output);
    }
    if (*fig1) {
      const RunConfig cfg = resolve_config(fig1_opts);
      if (eps0_list.empty()) eps0_list = {0.0, 0.1, 0.2};
      return emit(cmd_fig1(eps0_list, xi_min, xi_max, xi_step), cfg.output);
    }
    if (*survival) {
      const RunConfig cfg = resolve_config(survival_opts);
      return emit(cmd_survival(cfg), cfg.output);
    }
    if (*asym) {
      const RunConfig cfg = resolve_config(asym_opts);
      if (sigma_list.empty()) sigma_list = {9.0, 16.0, 25.0, 36.0};
      return emit(cmd_asymptotics(cfg, sigma_list), cfg.output);
    }
    if (*scat) {
      const RunConfig cfg = resolve_config(scat_opts);
      if (eps_list.empty()) eps_list = {0.04, 0.02, 0.01, 0.005};
      return emit(cmd_scattering_demo(load_model_fixture(model_path), nu_list, eps_list),
                  cfg.output);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
