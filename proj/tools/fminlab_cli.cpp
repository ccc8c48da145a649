#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fminlab/commands.hpp"
#include "fminlab/scenario.hpp"

int main(int argc, char** argv) {
  using namespace fminlab;

  CLI::App app{"Curvature and weighted-area experiments on warped products"};
  app.set_version_flag("--version", std::string(kToolVersion));

  CommandOptions opts;
  std::string config, preset, out, csv_dir;
  int samples = 0;
  double tol = 0.0;

  app.add_option("command", opts.command, "Subcommand to run")
      ->required()
      ->check(CLI::IsMember(command_names()));
  auto* config_opt = app.add_option("--config", config, "Scenario JSON (a directory for verify-all)");
  auto* preset_opt =
      app.add_option("--preset", preset, "Built-in scenario")->check(CLI::IsMember(ScenarioConfig::preset_names()));
  config_opt->excludes(preset_opt);
  auto* out_opt = app.add_option("--out", out, "Report path (default: output.report or stdout)");
  auto* csv_opt = app.add_option("--csv-dir", csv_dir, "Directory for CSV curves");
  auto* samples_opt = app.add_option("--samples", samples, "Sample count for sampled curves");
  auto* tol_opt = app.add_option("--tol", tol, "Quadrature and root tolerance")->check(CLI::PositiveNumber);
  app.add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*config_opt) opts.config = config;
  if (*preset_opt) opts.preset = preset;
  if (*out_opt) opts.out = out;
  if (*csv_opt) opts.csv_dir = csv_dir;
  if (*samples_opt) opts.samples = samples;
  if (*tol_opt) opts.tol = tol;
  return run_command(opts, std::cout, std::cerr);
}
