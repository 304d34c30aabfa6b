#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hubring/evolution.hpp"
#include "hubring/observables.hpp"

namespace hubring {

enum class SiteContent { Up, Down, Doublon };

struct Placement {
  int site = 0;
  SiteContent content = SiteContent::Up;
};

struct InitialTerm {
  double amplitude = 1.0;
  std::vector<Placement> placements;
};

enum class InitialKind { SymmetricSuperposition, ProductFock, CustomSuperposition };

/// Declarative initial state. The symmetric kind expands to the equal-weight
/// superposition of an unpaired up fermion on sites {1, L} and a doublon on
/// sites {L/2, L/2+1}, i.e. four Fock states with amplitude 1/2 on L=8;
/// built states are always normalized.
struct InitialStateSpec {
  InitialKind kind = InitialKind::SymmetricSuperposition;
  std::vector<InitialTerm> terms;

  static InitialStateSpec symmetric();
  static InitialStateSpec product(std::vector<Placement> placements);
  static InitialStateSpec superposition(std::vector<InitialTerm> terms);
};

QuantumState build_initial_state(const InitialStateSpec& initial, const SectorBasis& basis);

/// The two biased product-state preparations: the doublon sits on the
/// zero-potential site next to one barrier, the unpaired up fermion on the
/// opposite side of the ring (three sites between them).
///   A: doublon at 4 (next to the α·h barrier at 3), up at 8
///   B: doublon at L/2+1 (next to the h barrier at L/2+2), up at 1
enum class BiasConfig { A, B };

const char* bias_name(BiasConfig config);
InitialStateSpec biased_initial(BiasConfig config, int sites);

struct AlphaScanSpec {
  double alpha_min = 0.1;
  double alpha_max = 1.2;
  double step = 0.02;

  void validate() const;
  std::vector<double> values() const;  // strictly increasing
};

struct ScenarioSpec {
  std::string name;
  SectorSpec sector;
  ModelParams params;
  InitialStateSpec initial;
  TimeGrid grid;
  std::optional<AlphaScanSpec> scan;
};

SectorSpec default_sector();   // L=8, N_up=2, N_dn=1
ModelParams default_params();  // J=1, U=10, h=20, α=0.5
TimeGrid default_grid();       // t_max=40, dt=0.05

struct RunOptions {
  PropagatorMode mode = PropagatorMode::Exact;
  KrylovSettings krylov{};
  bool record_bond_currents = false;
};

/// Worst-case deviations across all output times of a run.
struct ConservationReport {
  double max_norm_error = 0.0;
  double max_energy_drift = 0.0;  // relative to max(|E(0)|, 1)
  double max_particle_error = 0.0;
};

struct ScenarioRun {
  std::string label;
  double alpha = 0.0;
  std::vector<TimeSeriesRecord> records;
  BondCurrentSeries bond_currents;  // filled when requested
  ConservationReport conservation;
};

/// Build basis, operators and initial state, propagate, and measure at every
/// grid time. Deterministic for a fixed spec (exact mode bit-for-bit).
ScenarioRun simulate(const ScenarioSpec& spec, const RunOptions& options = {});

/// Mean over the final half of the time window (grid indices >= size/2).
double final_half_mean(const std::vector<double>& series, const TimeGrid& grid);

struct BarrierComparisonResult {
  ScenarioRun asymmetric;  // α as configured
  ScenarioRun symmetric;   // α forced to 1
};

/// Same initial state, two barrier shapes; the symmetric branch reuses every
/// other parameter of the base spec.
BarrierComparisonResult run_barrier_comparison(const ScenarioSpec& base,
                                               const RunOptions& options = {});

/// Biased product initial state under the asymmetric barrier.
ScenarioRun run_direction_flip(BiasConfig config, const ScenarioSpec& base,
                               const RunOptions& options = {});

struct AlphaScanPoint {
  double alpha = 0.0;
  double mean_charge_up = 0.0;  // final-half mean of Q_up
  double mean_charge_dn = 0.0;
  bool counter_propagating = false;
  ScenarioRun run;
};

struct AlphaScanResult {
  BiasConfig config = BiasConfig::A;
  std::vector<AlphaScanPoint> points;  // ordered by alpha
};

/// One run per α value, executed concurrently; results are keyed by the α
/// index so order and thread layout never change the output.
AlphaScanResult run_alpha_scan(const AlphaScanSpec& scan, BiasConfig config,
                               const ScenarioSpec& base, const RunOptions& options = {});

}  // namespace hubring
