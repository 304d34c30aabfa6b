#pragma once

#include <array>
#include <vector>

#include "hubring/evolution.hpp"
#include "hubring/hamiltonian.hpp"

namespace hubring {

/// Spin-resolved ring currents. Bond b (0-based) joins sites (b+1, b+2 mod L);
/// positive current flows toward increasing site index. Each operator is
/// Hermitian (-i times a real antisymmetric hop difference), and the total is
/// the sum over all L bonds, ring-closing bond included.
class CurrentOperatorSet {
 public:
  CurrentOperatorSet(const SectorBasis& basis, const ModelParams& params);

  int bonds() const { return static_cast<int>(bond_[0].size()); }
  const SparseOperator& total(Spin spin) const { return total_[spin_slot(spin)]; }
  const SparseOperator& bond(Spin spin, int bond_index) const;

  static int spin_slot(Spin spin) { return spin == Spin::Up ? 0 : 1; }

 private:
  std::array<std::vector<SparseOperator>, 2> bond_;
  std::array<SparseOperator, 2> total_;
};

CurrentOperatorSet build_current_operators(const SectorBasis& basis, const ModelParams& params);

/// Hermitian expectation as a real number; throws when the imaginary part of
/// the raw expectation exceeds 1e-9 (it stays below 1e-12 in healthy runs).
double real_expectation(const SparseOperator& op, const QuantumState& psi);

struct SiteDensities {
  std::vector<double> up;
  std::vector<double> dn;
  std::vector<double> total;
};

/// Per-site densities computed directly from the amplitudes, no operator
/// matrices involved.
SiteDensities measure_densities(const QuantumState& psi);

/// Cumulative trapezoidal integral of a current series on a uniform grid;
/// the first value is exactly zero.
std::vector<double> transferred_charge(const std::vector<double>& current_series,
                                       const TimeGrid& grid);

/// Everything reported per output time.
struct TimeSeriesRecord {
  double t = 0.0;
  double current_up = 0.0;  // <J_up>
  double current_dn = 0.0;
  double charge_up = 0.0;   // Q_up
  double charge_dn = 0.0;
  std::vector<double> n;    // total site densities, index 0 = site 1
  std::vector<double> n_up;
  std::vector<double> n_dn;
};

/// [spin slot][bond][time index]
using BondCurrentSeries = std::array<std::vector<std::vector<double>>, 2>;

/// Max residual of d<n_{i,σ}>/dt = <j_{(i-1,i),σ}> - <j_{(i,i+1),σ}> over
/// sites, spins and interior grid times, with centered differences for the
/// density derivative. Second-order accurate in dt.
double continuity_residual(const BondCurrentSeries& bond_currents,
                           const std::vector<TimeSeriesRecord>& records, const TimeGrid& grid);

}  // namespace hubring
