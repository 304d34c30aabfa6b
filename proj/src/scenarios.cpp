#include "hubring/scenarios.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace hubring {

namespace {

std::string format_alpha(double alpha) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", alpha);
  return buffer;
}

FockState fock_from_placements(const std::vector<Placement>& placements, const SectorSpec& sector) {
  FockState state;
  const int L = sector.sites;
  for (const Placement& p : placements) {
    if (p.site < 1 || p.site > L) {
      throw std::invalid_argument("placement site " + std::to_string(p.site) + " outside 1.." +
                                  std::to_string(L));
    }
    const std::uint64_t bit = std::uint64_t{1} << (p.site - 1);
    const bool wants_up = p.content != SiteContent::Down;
    const bool wants_dn = p.content != SiteContent::Up;
    if (wants_up) {
      if (state.up & bit) {
        throw std::invalid_argument("two spin-up particles placed on site " +
                                    std::to_string(p.site));
      }
      state.up |= bit;
    }
    if (wants_dn) {
      if (state.dn & bit) {
        throw std::invalid_argument("two spin-down particles placed on site " +
                                    std::to_string(p.site));
      }
      state.dn |= bit;
    }
  }
  if (std::popcount(state.up) != sector.n_up || std::popcount(state.dn) != sector.n_dn) {
    throw std::invalid_argument("placements fill (" + std::to_string(std::popcount(state.up)) +
                                " up, " + std::to_string(std::popcount(state.dn)) +
                                " dn) but the sector holds (" + std::to_string(sector.n_up) +
                                ", " + std::to_string(sector.n_dn) + ")");
  }
  return state;
}

std::vector<InitialTerm> symmetric_terms(const SectorSpec& sector) {
  const int L = sector.sites;
  if (L < 4 || L % 2 != 0 || sector.n_up != 2 || sector.n_dn != 1) {
    throw std::invalid_argument(
        "the symmetric superposition needs an even ring of L >= 4 sites with N_up=2, N_dn=1");
  }
  std::vector<InitialTerm> terms;
  for (const int up_site : {1, L}) {
    for (const int doublon_site : {L / 2, L / 2 + 1}) {
      terms.push_back({1.0,
                       {Placement{up_site, SiteContent::Up},
                        Placement{doublon_site, SiteContent::Doublon}}});
    }
  }
  return terms;
}

ScenarioRun measure_run(std::string label, const ScenarioSpec& spec, const RunOptions& options) {
  const SectorBasis basis = enumerate_sector(spec.sector);
  const SparseOperator hamiltonian = build_hamiltonian(basis, spec.params);
  const CurrentOperatorSet currents = build_current_operators(basis, spec.params);
  const QuantumState psi0 = build_initial_state(spec.initial, basis);

  const Propagator propagator = options.mode == PropagatorMode::Exact
                                    ? Propagator::exact(hamiltonian)
                                    : Propagator::krylov(hamiltonian, options.krylov);
  const std::vector<QuantumState> states = evolve(psi0, spec.grid, propagator);

  ScenarioRun run;
  run.label = std::move(label);
  run.alpha = spec.params.barrier.asymmetry;
  run.records.resize(states.size());
  if (options.record_bond_currents) {
    for (auto& per_spin : run.bond_currents) {
      per_spin.assign(static_cast<std::size_t>(currents.bonds()),
                      std::vector<double>(states.size(), 0.0));
    }
  }

  std::vector<double> current_up(states.size()), current_dn(states.size());
  const double energy0 = real_expectation(hamiltonian, states.front());
  const double energy_scale = std::max(std::abs(energy0), 1.0);

  for (std::size_t m = 0; m < states.size(); ++m) {
    const QuantumState& psi = states[m];
    current_up[m] = real_expectation(currents.total(Spin::Up), psi);
    current_dn[m] = real_expectation(currents.total(Spin::Dn), psi);
    const SiteDensities density = measure_densities(psi);

    TimeSeriesRecord& record = run.records[m];
    record.t = spec.grid.time(m);
    record.current_up = current_up[m];
    record.current_dn = current_dn[m];
    record.n = density.total;
    record.n_up = density.up;
    record.n_dn = density.dn;

    if (options.record_bond_currents) {
      for (const Spin spin : {Spin::Up, Spin::Dn}) {
        const int slot = CurrentOperatorSet::spin_slot(spin);
        for (int b = 0; b < currents.bonds(); ++b) {
          run.bond_currents[static_cast<std::size_t>(slot)][static_cast<std::size_t>(b)][m] =
              real_expectation(currents.bond(spin, b), psi);
        }
      }
    }

    double up_sum = 0.0, dn_sum = 0.0;
    for (int i = 0; i < spec.sector.sites; ++i) {
      up_sum += density.up[static_cast<std::size_t>(i)];
      dn_sum += density.dn[static_cast<std::size_t>(i)];
    }
    auto& report = run.conservation;
    report.max_norm_error = std::max(report.max_norm_error, std::abs(psi.norm() - 1.0));
    report.max_energy_drift =
        std::max(report.max_energy_drift,
                 std::abs(real_expectation(hamiltonian, psi) - energy0) / energy_scale);
    report.max_particle_error =
        std::max({report.max_particle_error, std::abs(up_sum - spec.sector.n_up),
                  std::abs(dn_sum - spec.sector.n_dn)});
  }

  const std::vector<double> charge_up = transferred_charge(current_up, spec.grid);
  const std::vector<double> charge_dn = transferred_charge(current_dn, spec.grid);
  for (std::size_t m = 0; m < states.size(); ++m) {
    run.records[m].charge_up = charge_up[m];
    run.records[m].charge_dn = charge_dn[m];
  }
  return run;
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

InitialStateSpec InitialStateSpec::symmetric() {
  return InitialStateSpec{InitialKind::SymmetricSuperposition, {}};
}

InitialStateSpec InitialStateSpec::product(std::vector<Placement> placements) {
  return InitialStateSpec{InitialKind::ProductFock, {InitialTerm{1.0, std::move(placements)}}};
}

InitialStateSpec InitialStateSpec::superposition(std::vector<InitialTerm> terms) {
  return InitialStateSpec{InitialKind::CustomSuperposition, std::move(terms)};
}

QuantumState build_initial_state(const InitialStateSpec& initial, const SectorBasis& basis) {
  const SectorSpec& sector = basis.spec();

  std::vector<InitialTerm> terms;
  switch (initial.kind) {
    case InitialKind::SymmetricSuperposition:
      terms = symmetric_terms(sector);
      break;
    case InitialKind::ProductFock:
      if (initial.terms.size() != 1) {
        throw std::invalid_argument("a product state takes exactly one placement list");
      }
      terms = initial.terms;
      terms.front().amplitude = 1.0;
      break;
    case InitialKind::CustomSuperposition:
      if (initial.terms.empty()) {
        throw std::invalid_argument("a superposition needs at least one term");
      }
      terms = initial.terms;
      break;
  }

  Eigen::VectorXcd amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const InitialTerm& term : terms) {
    const FockState state = fock_from_placements(term.placements, sector);
    amplitudes[static_cast<Eigen::Index>(basis.index(state))] += term.amplitude;
  }
  const double norm = amplitudes.norm();
  if (norm < 1e-12) {
    throw std::invalid_argument("initial superposition cancels to the zero vector");
  }
  amplitudes /= norm;
  return QuantumState{&basis, std::move(amplitudes)};
}

const char* bias_name(BiasConfig config) { return config == BiasConfig::A ? "A" : "B"; }

InitialStateSpec biased_initial(BiasConfig config, int sites) {
  if (sites < 8 || sites % 2 != 0) {
    throw std::invalid_argument("biased preparations need an even ring of L >= 8 sites");
  }
  // The unpaired fermion sits diametrically opposite the doublon, three sites
  // between them on either arc of the default ring.
  const int doublon_site = config == BiasConfig::A ? 4 : sites / 2 + 1;
  const int up_site = (doublon_site + sites / 2 - 1) % sites + 1;
  return InitialStateSpec::product(
      {Placement{doublon_site, SiteContent::Doublon}, Placement{up_site, SiteContent::Up}});
}

void AlphaScanSpec::validate() const {
  if (!(alpha_min >= 0.0)) throw std::invalid_argument("alpha_min must be >= 0");
  if (!(step > 0.0)) throw std::invalid_argument("alpha_step must be positive");
  if (!(alpha_max > alpha_min)) throw std::invalid_argument("alpha_max must exceed alpha_min");
}

std::vector<double> AlphaScanSpec::values() const {
  validate();
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double alpha = alpha_min + k * step;
    if (alpha > alpha_max + 1e-12) break;
    out.push_back(alpha);
  }
  return out;
}

SectorSpec default_sector() { return SectorSpec{8, 2, 1}; }

ModelParams default_params() { return ModelParams{1.0, 10.0, BarrierSpec{20.0, 0.5}}; }

TimeGrid default_grid() { return TimeGrid(40.0, 0.05); }

ScenarioRun simulate(const ScenarioSpec& spec, const RunOptions& options) {
  return measure_run(spec.name, spec, options);
}

double final_half_mean(const std::vector<double>& series, const TimeGrid& grid) {
  if (series.size() != grid.size()) {
    throw std::invalid_argument("series length does not match grid size");
  }
  const std::size_t start = series.size() / 2;
  double sum = 0.0;
  for (std::size_t k = start; k < series.size(); ++k) sum += series[k];
  return sum / static_cast<double>(series.size() - start);
}

BarrierComparisonResult run_barrier_comparison(const ScenarioSpec& base, const RunOptions& options) {
  ScenarioSpec asymmetric = base;
  ScenarioSpec symmetric = base;
  symmetric.params.barrier.asymmetry = 1.0;

  BarrierComparisonResult result{
      measure_run("alpha-" + format_alpha(asymmetric.params.barrier.asymmetry), asymmetric, options),
      measure_run("alpha-1", symmetric, options)};
  return result;
}

ScenarioRun run_direction_flip(BiasConfig config, const ScenarioSpec& base,
                               const RunOptions& options) {
  ScenarioSpec spec = base;
  spec.initial = biased_initial(config, spec.sector.sites);
  return measure_run(std::string("config") + bias_name(config), spec, options);
}

AlphaScanResult run_alpha_scan(const AlphaScanSpec& scan, BiasConfig config,
                               const ScenarioSpec& base, const RunOptions& options) {
  const std::vector<double> alphas = scan.values();

  AlphaScanResult result;
  result.config = config;
  result.points.resize(alphas.size());

  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> inflight;
  inflight.reserve(workers);

  auto compute_point = [&](std::size_t index) {
    ScenarioSpec spec = base;
    spec.initial = biased_initial(config, spec.sector.sites);
    spec.params.barrier.asymmetry = alphas[index];
    const std::string label = std::string("config") + bias_name(config) + "_alpha-" +
                              format_alpha(alphas[index]);
    AlphaScanPoint& point = result.points[index];
    point.alpha = alphas[index];
    point.run = measure_run(label, spec, options);

    std::vector<double> charge_up(point.run.records.size()), charge_dn(point.run.records.size());
    for (std::size_t m = 0; m < point.run.records.size(); ++m) {
      charge_up[m] = point.run.records[m].charge_up;
      charge_dn[m] = point.run.records[m].charge_dn;
    }
    point.mean_charge_up = final_half_mean(charge_up, base.grid);
    point.mean_charge_dn = final_half_mean(charge_dn, base.grid);
    point.counter_propagating = sign_of(point.mean_charge_up) * sign_of(point.mean_charge_dn) < 0;
  };

  for (std::size_t index = 0; index < alphas.size(); ++index) {
    if (inflight.size() >= workers) {
      inflight.front().get();
      inflight.erase(inflight.begin());
    }
    inflight.push_back(std::async(std::launch::async, compute_point, index));
  }
  for (auto& task : inflight) task.get();
  return result;
}

}  // namespace hubring
