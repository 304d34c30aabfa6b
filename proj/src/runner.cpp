#include "hubring/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "hubring/plots.hpp"
#include "hubring/timeseries_io.hpp"

namespace hubring {

namespace fs = std::filesystem;

namespace {

fs::path resolve_out_dir(const RunConfig& config, const CliOverrides& overrides) {
  if (overrides.out_dir) return *overrides.out_dir;
  if (!config.out_dir.empty()) return config.out_dir;
  if (const char* env = std::getenv("HUBRING_OUT"); env != nullptr && *env != '\0') return env;
  return "out";
}

RunOptions resolve_options(const RunConfig& config, const CliOverrides& overrides) {
  std::string mode = overrides.mode.value_or(config.mode);
  if (mode == "auto") {
    mode = config.sector().dimension() <= 5000 ? "exact" : "krylov";
  }
  RunOptions options;
  options.mode = mode == "exact" ? PropagatorMode::Exact : PropagatorMode::Krylov;
  options.krylov.subspace_dim = config.krylov_dim;
  options.krylov.step_tolerance = config.krylov_tol;
  return options;
}

ScenarioSpec base_spec(const RunConfig& config) {
  ScenarioSpec spec{config.scenario,
                    config.sector(),
                    config.params(),
                    config.initial.value_or(InitialStateSpec::symmetric()),
                    TimeGrid(config.t_max, config.dt),
                    std::nullopt};
  if (config.scenario == "alpha-scan") spec.scan = config.scan();
  return spec;
}

void persist_run(const fs::path& dir, const std::string& scenario, const ScenarioRun& run,
                 const RunConfig& config, std::ostream& out) {
  const std::string stem = scenario + "_" + run.label;
  if (config.write_csv) {
    const fs::path path = dir / (stem + ".csv");
    write_timeseries_csv(path, run);
    out << "wrote " << path.string() << "\n";
  }
  if (config.write_json) {
    const fs::path path = dir / (stem + ".json");
    write_timeseries_json(path, run);
    out << "wrote " << path.string() << "\n";
  }
}

std::vector<BiasConfig> selected_bias(const RunConfig& config) {
  if (config.bias == "A") return {BiasConfig::A};
  if (config.bias == "B") return {BiasConfig::B};
  return {BiasConfig::A, BiasConfig::B};
}

}  // namespace

int run_from_config_file(const std::string& config_path, const CliOverrides& overrides,
                         std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot open config file '" + config_path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    config = parse_config(text);
    if (overrides.mode && *overrides.mode != "exact" && *overrides.mode != "krylov") {
      throw ConfigError("--mode must be exact or krylov, got '" + *overrides.mode + "'");
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  if (overrides.no_plots) config.plots = false;
  if (overrides.mode) config.mode = *overrides.mode;
  if (overrides.out_dir) config.out_dir = *overrides.out_dir;

  const fs::path dir = resolve_out_dir(config, overrides);
  config.out_dir = dir.string();
  const RunOptions options = resolve_options(config, overrides);

  try {
    fs::create_directories(dir);

    // Provenance echo next to the data.
    {
      std::ofstream echo(dir / (config.scenario + "_resolved_config.txt"));
      if (!echo) throw IoError("cannot write the resolved-config echo");
      echo << echo_config(config);
    }

    const ScenarioSpec base = base_spec(config);

    if (config.scenario == "barrier-comparison") {
      const BarrierComparisonResult result = run_barrier_comparison(base, options);
      persist_run(dir, config.scenario, result.asymmetric, config, out);
      persist_run(dir, config.scenario, result.symmetric, config, out);
      if (config.plots) {
        try {
          emit_barrier_comparison_plots(dir, result);
          out << "wrote plots barrier-comparison_[a-d].svg\n";
        } catch (const std::exception& e) {
          err << "warning: plotting failed (" << e.what() << "); data files are complete\n";
        }
      }
    } else if (config.scenario == "direction-flip") {
      std::vector<ScenarioRun> runs;
      for (const BiasConfig bias : selected_bias(config)) {
        runs.push_back(run_direction_flip(bias, base, options));
        persist_run(dir, config.scenario, runs.back(), config, out);
      }
      if (config.plots) {
        try {
          emit_direction_flip_plots(dir, runs);
          out << "wrote plots direction-flip_*.svg\n";
        } catch (const std::exception& e) {
          err << "warning: plotting failed (" << e.what() << "); data files are complete\n";
        }
      }
    } else {
      std::vector<AlphaScanResult> results;
      for (const BiasConfig bias : selected_bias(config)) {
        results.push_back(run_alpha_scan(config.scan(), bias, base, options));
        const AlphaScanResult& result = results.back();
        for (const AlphaScanPoint& point : result.points) {
          persist_run(dir, config.scenario, point.run, config, out);
        }
        const fs::path summary =
            dir / (config.scenario + "_config" + bias_name(bias) + "_summary.csv");
        write_scan_summary_csv(summary, result);
        out << "wrote " << summary.string() << "\n";
      }
      if (config.plots) {
        try {
          emit_alpha_scan_plots(dir, results);
          out << "wrote plots alpha-scan_[a-d].svg\n";
        } catch (const std::exception& e) {
          err << "warning: plotting failed (" << e.what() << "); data files are complete\n";
        }
      }
    }
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}

void list_scenarios(std::ostream& out) {
  out << "barrier-comparison  symmetric initial state under the asymmetric (alpha) and\n"
         "                    symmetric (alpha=1) barrier; only the former transports charge\n"
         "direction-flip      biased initial states A/B beside either barrier; the\n"
         "                    transferred-charge signs flip between the two\n"
         "alpha-scan          Q_sigma(t) over a grid of asymmetry values for the biased\n"
         "                    initial states; counter-propagation opens near the resonance\n";
}

int run_selftest(std::ostream& out) {
  bool all_ok = true;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name << "  " << detail << "\n";
    all_ok = all_ok && ok;
  };

  try {
    const SectorSpec sector = default_sector();
    const ModelParams params = default_params();
    const SectorBasis basis = enumerate_sector(sector);
    const SparseOperator hamiltonian = build_hamiltonian(basis, params);

    {
      const Eigen::MatrixXcd dense = hamiltonian.dense();
      const double dev = (dense - dense.adjoint()).cwiseAbs().maxCoeff();
      report("hermitian-hamiltonian", hamiltonian.hermitian() && dev <= 1e-12,
             "max |H - H^+| = " + format_number(dev));
    }

    ScenarioSpec spec{"selftest", sector, params, InitialStateSpec::symmetric(), default_grid(),
                      std::nullopt};
    RunOptions options;
    options.record_bond_currents = true;
    const BarrierComparisonResult comparison = run_barrier_comparison(spec, options);

    for (const ScenarioRun* run : {&comparison.asymmetric, &comparison.symmetric}) {
      const ConservationReport& c = run->conservation;
      report(("conservation-" + run->label).c_str(),
             c.max_norm_error <= 1e-10 && c.max_energy_drift <= 1e-9 &&
                 c.max_particle_error <= 1e-9,
             "norm " + format_number(c.max_norm_error) + ", energy " +
                 format_number(c.max_energy_drift) + ", particles " +
                 format_number(c.max_particle_error));
    }

    {
      double worst = 0.0;
      const ScenarioRun& run = comparison.asymmetric;
      for (std::size_t m = 0; m < run.records.size(); ++m) {
        for (int slot = 0; slot < 2; ++slot) {
          double bond_sum = 0.0;
          for (const auto& series : run.bond_currents[slot]) bond_sum += series[m];
          const double total =
              slot == 0 ? run.records[m].current_up : run.records[m].current_dn;
          worst = std::max(worst, std::abs(total - bond_sum));
        }
      }
      report("bond-current-sum-rule", worst <= 1e-12, "max deviation " + format_number(worst));
    }

    report("charge-starts-at-zero",
           comparison.asymmetric.records.front().charge_up == 0.0 &&
               comparison.asymmetric.records.front().charge_dn == 0.0,
           "Q(0) is exactly zero");

    {
      double worst = 0.0;
      for (const TimeSeriesRecord& r : comparison.symmetric.records) {
        worst = std::max({worst, std::abs(r.charge_up), std::abs(r.charge_dn)});
      }
      report("symmetric-barrier-null-current", worst <= 1e-9,
             "max |Q| = " + format_number(worst) + " at alpha = 1");
    }

    {
      // Pure centered-difference truncation; 0.02 at dt = 0.05, so 0.1 flags
      // any structural breakage of the local conservation law.
      const double residual = continuity_residual(comparison.asymmetric.bond_currents,
                                                  comparison.asymmetric.records, spec.grid);
      report("continuity-equation", residual <= 0.1,
             "max residual " + format_number(residual) + " at dt = " +
                 format_number(spec.grid.dt()));
    }
  } catch (const std::exception& e) {
    out << "[FAIL] selftest aborted: " << e.what() << "\n";
    return kNumericalError;
  }

  out << (all_ok ? "selftest passed\n" : "selftest FAILED\n");
  return all_ok ? kOk : kNumericalError;
}

}  // namespace hubring
