#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hubring/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hubring - spin-resolved transport on an interacting fermionic ring"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string mode;
  bool no_plots = false;

  CLI::App* run = app.add_subcommand("run", "simulate a scenario described by a config file");
  run->add_option("config", config_path, "path to the key = value config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides config and HUBRING_OUT)");
  run->add_option("--mode", mode, "propagator override: exact or krylov")
      ->check(CLI::IsMember({"exact", "krylov"}));
  run->add_flag("--no-plots", no_plots, "skip plot emission");

  CLI::App* list = app.add_subcommand("list-scenarios", "print the available scenarios");
  CLI::App* selftest =
      app.add_subcommand("selftest", "run the invariant suite on the reference configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? hubring::kOk : hubring::kConfigError;
  }

  if (list->parsed()) {
    hubring::list_scenarios(std::cout);
    return hubring::kOk;
  }
  if (selftest->parsed()) {
    return hubring::run_selftest(std::cout);
  }

  hubring::CliOverrides overrides;
  if (!out_dir.empty()) overrides.out_dir = out_dir;
  if (!mode.empty()) overrides.mode = mode;
  overrides.no_plots = no_plots;
  return hubring::run_from_config_file(config_path, overrides, std::cout, std::cerr);
}
