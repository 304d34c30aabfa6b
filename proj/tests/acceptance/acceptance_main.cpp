// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 only if all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hubring/scenarios.hpp"
#include "../naive_fermion.hpp"

using namespace hubring;

namespace {

struct Outcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<Outcome> outcomes;
std::vector<std::pair<std::string, ConservationReport>> conservation_log;

void record(const std::string& name, bool pass, const std::string& detail) {
  outcomes.push_back({name, pass, detail});
  std::printf("[%s] %-28s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
}

void track(const ScenarioRun& run) { conservation_log.emplace_back(run.label, run.conservation); }

std::string num(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.3g", v);
  return buffer;
}

double mean_final_charge(const ScenarioRun& run, Spin spin, const TimeGrid& grid) {
  std::vector<double> series(run.records.size());
  for (std::size_t m = 0; m < series.size(); ++m) {
    series[m] = spin == Spin::Up ? run.records[m].charge_up : run.records[m].charge_dn;
  }
  return final_half_mean(series, grid);
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

ScenarioSpec reference_spec() {
  return ScenarioSpec{"acceptance", default_sector(), default_params(),
                      InitialStateSpec::symmetric(), default_grid(), std::nullopt};
}

}  // namespace

int main() {
  const auto started = std::chrono::steady_clock::now();
  const ScenarioSpec base = reference_spec();

  // --- Barrier comparison: symmetry null + asymmetry activation ---
  const BarrierComparisonResult comparison = run_barrier_comparison(base);
  track(comparison.asymmetric);
  track(comparison.symmetric);
  {
    double worst_up = 0.0, worst_dn = 0.0;
    for (const auto& r : comparison.symmetric.records) {
      worst_up = std::max(worst_up, std::abs(r.charge_up));
      worst_dn = std::max(worst_dn, std::abs(r.charge_dn));
    }
    record("symmetry-null", worst_up <= 1e-9 && worst_dn <= 1e-9,
           "alpha=1: max|Q_up| = " + num(worst_up) + ", max|Q_dn| = " + num(worst_dn) +
               " (tolerance 1e-9)");

    double asym_up = 0.0, asym_dn = 0.0;
    for (const auto& r : comparison.asymmetric.records) {
      asym_up = std::max(asym_up, std::abs(r.charge_up));
      asym_dn = std::max(asym_dn, std::abs(r.charge_dn));
    }
    record("asymmetry-activation",
           asym_up >= 1e3 * worst_up && asym_dn >= 1e3 * worst_dn && asym_up > 0.0 && asym_dn > 0.0,
           "alpha=0.5: max|Q_up| = " + num(asym_up) + ", max|Q_dn| = " + num(asym_dn) +
               " vs 1e3 x alpha=1 residual");
  }

  // --- Direction flip ---
  {
    const ScenarioRun a = run_direction_flip(BiasConfig::A, base);
    const ScenarioRun b = run_direction_flip(BiasConfig::B, base);
    track(a);
    track(b);
    const double a_up = mean_final_charge(a, Spin::Up, base.grid);
    const double a_dn = mean_final_charge(a, Spin::Dn, base.grid);
    const double b_up = mean_final_charge(b, Spin::Up, base.grid);
    const double b_dn = mean_final_charge(b, Spin::Dn, base.grid);
    const bool flip = sign_of(a_up) != 0 && sign_of(a_up) == -sign_of(b_up);
    const bool counter_a = sign_of(a_up) == -sign_of(a_dn) && sign_of(a_dn) != 0;
    const bool counter_b = sign_of(b_up) == -sign_of(b_dn) && sign_of(b_dn) != 0;
    record("direction-flip", flip && counter_a && counter_b,
           "Qbar_up: A = " + num(a_up) + ", B = " + num(b_up) + "; Qbar_dn: A = " + num(a_dn) +
               ", B = " + num(b_dn));
  }

  // --- Counter-propagation window over the alpha scan ---
  {
    const AlphaScanSpec scan{0.1, 1.2, 0.02};
    bool pass = true;
    std::string detail;
    for (const BiasConfig config : {BiasConfig::A, BiasConfig::B}) {
      const AlphaScanResult result = run_alpha_scan(scan, config, base);
      for (const auto& point : result.points) track(point.run);

      bool window_nonempty = false, at_half = false, at_one = false;
      bool up_sign_constant = true;
      const int up_sign = sign_of(result.points.front().mean_charge_up);
      for (const auto& point : result.points) {
        if (sign_of(point.mean_charge_up) != up_sign) up_sign_constant = false;
        if (point.counter_propagating) {
          window_nonempty = true;
          if (std::abs(point.alpha - 0.5) < 1e-9) at_half = true;
          if (std::abs(point.alpha - 1.0) < 1e-9) at_one = true;
        }
      }
      const bool ok = window_nonempty && at_half && !at_one && up_sign_constant && up_sign != 0;
      pass = pass && ok;
      detail += std::string("config ") + bias_name(config) + ": window" +
                (window_nonempty ? "+" : "-") + " 0.5" + (at_half ? "+" : "-") + " 1.0" +
                (at_one ? "(in!)" : "(out)") + " up-sign-const" + (up_sign_constant ? "+" : "-") +
                "  ";
    }
    record("counter-propagation-window", pass, detail);
  }

  // --- Propagator oracle: Krylov vs exact transferred charge ---
  {
    ScenarioSpec spec = base;
    RunOptions krylov;
    krylov.mode = PropagatorMode::Krylov;
    const ScenarioRun exact = comparison.asymmetric;
    const ScenarioRun approximate = simulate(spec, krylov);
    track(approximate);
    double worst = 0.0;
    for (std::size_t m = 0; m < exact.records.size(); ++m) {
      worst = std::max({worst,
                        std::abs(exact.records[m].charge_up - approximate.records[m].charge_up),
                        std::abs(exact.records[m].charge_dn - approximate.records[m].charge_dn)});
    }
    record("propagator-oracle", worst <= 1e-8,
           "max|Q_exact - Q_krylov| = " + num(worst) + " (tolerance 1e-8)");
  }

  // --- Continuity equation: residual scales as dt^2 ---
  {
    RunOptions options;
    options.record_bond_currents = true;
    ScenarioSpec coarse = base;
    coarse.grid = TimeGrid(40.0, 0.05);
    ScenarioSpec fine = base;
    fine.grid = TimeGrid(40.0, 0.025);
    const ScenarioRun coarse_run = simulate(coarse, options);
    const ScenarioRun fine_run = simulate(fine, options);
    track(coarse_run);
    track(fine_run);
    const double coarse_residual =
        continuity_residual(coarse_run.bond_currents, coarse_run.records, coarse.grid);
    const double fine_residual =
        continuity_residual(fine_run.bond_currents, fine_run.records, fine.grid);
    const double ratio = coarse_residual / fine_residual;
    record("continuity-dt2", ratio >= 3.5 && ratio <= 4.5,
           "residual " + num(coarse_residual) + " -> " + num(fine_residual) + ", ratio " +
               num(ratio) + " (expected in [3.5, 4.5])");
  }

  // --- Fermionic-sign oracle on small sectors ---
  {
    bool pass = true;
    double worst = 0.0;
    for (const SectorSpec spec : {SectorSpec{2, 1, 1}, SectorSpec{3, 2, 1}, SectorSpec{4, 2, 1},
                                  SectorSpec{4, 2, 2}}) {
      const ModelParams params{1.0, 10.0, BarrierSpec{}};
      const SectorBasis basis = enumerate_sector(spec);
      const Eigen::MatrixXd fast = build_hamiltonian(basis, params).coefficient_dense();
      const Eigen::MatrixXd slow = naive::hamiltonian_matrix(basis, params);
      const double deviation = (fast - slow).cwiseAbs().maxCoeff();
      worst = std::max(worst, deviation);
      pass = pass && deviation == 0.0;
    }
    record("fermionic-sign-oracle", pass,
           "max entry deviation vs operator-string algebra = " + num(worst) + " (must be 0)");
  }

  // --- Analytic two-site check ---
  {
    const SectorBasis basis = enumerate_sector({2, 1, 0});
    const SparseOperator h = build_hamiltonian(basis, ModelParams{1.0, 0.0, BarrierSpec{}});
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2);
    v[static_cast<Eigen::Index>(basis.index(FockState{1, 0}))] = 1.0;
    const QuantumState psi0{&basis, v};
    const TimeGrid grid(10.0, 0.01);
    const auto states = evolve(psi0, grid, Propagator::exact(h));
    double worst = 0.0;
    for (std::size_t m = 0; m < states.size(); ++m) {
      const double n1 = measure_densities(states[m]).up[0];
      worst = std::max(worst, std::abs(n1 - std::pow(std::cos(2.0 * grid.time(m)), 2)));
    }
    record("two-site-analytic", worst <= 1e-10,
           "max |<n_1>(t) - cos^2(2Jt)| = " + num(worst) + " (tolerance 1e-10)");
  }

  // --- Conservation across every run performed above ---
  {
    double norm = 0.0, energy = 0.0, particles = 0.0;
    for (const auto& [label, report] : conservation_log) {
      norm = std::max(norm, report.max_norm_error);
      energy = std::max(energy, report.max_energy_drift);
      particles = std::max(particles, report.max_particle_error);
    }
    record("conservation-suite",
           norm <= 1e-10 && energy <= 1e-9 && particles <= 1e-9,
           std::to_string(conservation_log.size()) + " runs: norm " + num(norm) + ", energy " +
               num(energy) + ", particles " + num(particles));
  }

  int failures = 0;
  for (const Outcome& o : outcomes) failures += o.pass ? 0 : 1;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::printf("%zu/%zu acceptance criteria passed in %.1f s\n", outcomes.size() - failures,
              outcomes.size(), seconds);
  return failures == 0 ? 0 : 1;
}
