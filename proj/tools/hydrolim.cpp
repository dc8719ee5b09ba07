#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hydrolim/exec.hpp"

int main(int argc, char** argv) {
  hydrolim::exec::apply_thread_env();

  CLI::App app{"Primitive equations and anisotropic Navier-Stokes on the periodic box"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run = app.add_subcommand("run", "integrate one system and export diagnostics");
  run->add_option("--config", run_config, "run configuration (JSON)")->required();

  std::string sweep_config;
  auto* sweep = app.add_subcommand("sweep", "hydrostatic-limit convergence study");
  sweep->add_option("--config", sweep_config, "sweep configuration (JSON)")->required();

  std::string fault;
  auto* check = app.add_subcommand("check", "run the invariant battery");
  check->add_option("--inject-fault", fault)->group("");

  std::string field;
  double s = 0.5;
  auto* besov = app.add_subcommand("besov", "Besov norm of a PEQS1 snapshot");
  besov->add_option("--field", field, "snapshot path")->required();
  besov->add_option("--s", s, "regularity index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hydrolim::cli::kExitConfig;
  }

  using namespace hydrolim::cli;
  if (*run) return cmd_run(run_config, std::cout, std::cerr);
  if (*sweep) return cmd_sweep(sweep_config, std::cout, std::cerr);
  if (*check) return cmd_check(fault, std::cout, std::cerr);
  if (*besov) return cmd_besov(field, s, std::cout, std::cerr);
  return kExitConfig;
}
