#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "photon/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"photon-gauntlet: detection statistics of photons crossing "
               "single-capacity absorbers"};
  app.require_subcommand(1);

  photon::CommandOptions options;
  std::string scenario;
  std::string out;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario, "Scenario file (JSON)")
        ->required();
    cmd->add_option("--out", out,
                    "Write the CSV table here (and a JSON report next to it)");
  };
  const auto add_mc = [&](CLI::App* cmd) {
    cmd->add_option("--trials", options.trials, "Override the trial count");
    cmd->add_option("--seed", options.seed,
                    "Override the seed (else PHOTON_SEED, else the file)");
    cmd->add_option("--workers", options.workers,
                    "Worker threads (default: all cores)");
  };

  auto* analytic = app.add_subcommand("analytic", "Closed-form report");
  add_common(analytic);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo vs analytic");
  add_common(simulate);
  add_mc(simulate);
  simulate->add_option("--tol", options.tol,
                       "Per-cell |z| threshold (default 4)");

  auto* oracle = app.add_subcommand("oracle", "Exact enumeration cross-check");
  add_common(oracle);
  oracle->add_option("--tol", options.tol,
                     "Absolute tolerance (default 1e-12)");

  auto* compare =
      app.add_subcommand("compare", "Separate vs bunched survival ordering");
  add_common(compare);
  add_mc(compare);

  auto* sweep = app.add_subcommand("sweep", "Ordering verdict over a grid");
  add_common(sweep);
  sweep
      ->add_option("--sweep", options.sweeps,
                   "field=start:stop:step or field=a,b,c; fields: "
                   "shells[i].q, detector.q, emission.photons_k, absorbers")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : photon::kExitInput;
  }

  options.scenario_path = scenario;
  if (!out.empty()) options.out = out;
  const std::string command = app.get_subcommands().front()->get_name();
  return photon::run_command(command, options, std::cout, std::cerr);
}
