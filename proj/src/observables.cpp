#include "hubring/observables.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace hubring {

namespace {

// Generator of the bond current j_(i,i+1),σ = -iJ (c†_i c_{i+1} - c†_{i+1} c_i):
// real antisymmetric coefficients +J·sign for c†_i c_{i+1} and -J·sign for the
// reverse hop. The -i lives in the operator structure tag.
std::vector<SparseOperator::Entry> bond_generator_entries(const SectorBasis& basis, int i, int j,
                                                          Spin spin, double tunneling) {
  const int L = basis.spec().sites;
  std::vector<SparseOperator::Entry> entries;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const FockState s = basis.state(k);
    if (const auto hop = apply_hop(s, i, j, spin, L)) {
      entries.push_back({basis.index(hop->state), k, tunneling * hop->sign});
    }
    if (const auto hop = apply_hop(s, j, i, spin, L)) {
      entries.push_back({basis.index(hop->state), k, -tunneling * hop->sign});
    }
  }
  return entries;
}

}  // namespace

CurrentOperatorSet::CurrentOperatorSet(const SectorBasis& basis, const ModelParams& params) {
  params.validate();
  const int L = basis.spec().sites;
  if (L < 2) throw std::invalid_argument("current operators need at least two sites");

  for (const Spin spin : {Spin::Up, Spin::Dn}) {
    const int slot = spin_slot(spin);
    std::vector<SparseOperator::Entry> total_entries;
    bond_[slot].reserve(static_cast<std::size_t>(L));
    for (int b = 0; b < L; ++b) {
      const int i = b + 1;
      const int j = (i % L) + 1;
      auto entries = bond_generator_entries(basis, i, j, spin, params.tunneling);
      bond_[slot].emplace_back(basis.size(), OperatorStructure::ImaginaryAntisymmetric, entries);
      total_entries.insert(total_entries.end(), entries.begin(), entries.end());
    }
    total_[slot] =
        SparseOperator(basis.size(), OperatorStructure::ImaginaryAntisymmetric, total_entries);
  }
}

const SparseOperator& CurrentOperatorSet::bond(Spin spin, int bond_index) const {
  const auto& list = bond_[spin_slot(spin)];
  if (bond_index < 0 || bond_index >= static_cast<int>(list.size())) {
    throw std::out_of_range("bond index " + std::to_string(bond_index) + " outside 0.." +
                            std::to_string(list.size() - 1));
  }
  return list[static_cast<std::size_t>(bond_index)];
}

CurrentOperatorSet build_current_operators(const SectorBasis& basis, const ModelParams& params) {
  return CurrentOperatorSet(basis, params);
}

double real_expectation(const SparseOperator& op, const QuantumState& psi) {
  const std::complex<double> value = op.expectation(psi.amplitudes);
  if (std::abs(value.imag()) > 1e-9) {
    throw NumericalError("expectation of a Hermitian operator has imaginary part " +
                         std::to_string(value.imag()));
  }
  return value.real();
}

SiteDensities measure_densities(const QuantumState& psi) {
  if (psi.basis == nullptr) throw std::invalid_argument("state has no basis attached");
  const SectorBasis& basis = *psi.basis;
  const int L = basis.spec().sites;

  SiteDensities out;
  out.up.assign(static_cast<std::size_t>(L), 0.0);
  out.dn.assign(static_cast<std::size_t>(L), 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double weight = std::norm(psi.amplitudes[static_cast<Eigen::Index>(k)]);
    if (weight == 0.0) continue;
    const FockState s = basis.state(k);
    for (std::uint64_t m = s.up; m != 0; m &= m - 1) {
      out.up[static_cast<std::size_t>(std::countr_zero(m))] += weight;
    }
    for (std::uint64_t m = s.dn; m != 0; m &= m - 1) {
      out.dn[static_cast<std::size_t>(std::countr_zero(m))] += weight;
    }
  }
  out.total.resize(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) {
    out.total[static_cast<std::size_t>(i)] =
        out.up[static_cast<std::size_t>(i)] + out.dn[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<double> transferred_charge(const std::vector<double>& current_series,
                                       const TimeGrid& grid) {
  if (current_series.size() != grid.size()) {
    throw std::invalid_argument("current series length " + std::to_string(current_series.size()) +
                                " does not match grid size " + std::to_string(grid.size()));
  }
  std::vector<double> charge(current_series.size(), 0.0);
  for (std::size_t k = 1; k < current_series.size(); ++k) {
    charge[k] = charge[k - 1] + 0.5 * grid.dt() * (current_series[k - 1] + current_series[k]);
  }
  return charge;
}

double continuity_residual(const BondCurrentSeries& bond_currents,
                           const std::vector<TimeSeriesRecord>& records, const TimeGrid& grid) {
  if (records.size() != grid.size()) {
    throw std::invalid_argument("record count does not match grid size");
  }
  if (records.size() < 3) return 0.0;
  const int L = static_cast<int>(records.front().n_up.size());
  for (const auto& per_spin : bond_currents) {
    if (static_cast<int>(per_spin.size()) != L) {
      throw std::invalid_argument("bond current series must cover all ring bonds");
    }
  }

  const double dt = grid.dt();
  double worst = 0.0;
  for (int slot = 0; slot < 2; ++slot) {
    for (int i = 0; i < L; ++i) {
      const int inflow_bond = (i - 1 + L) % L;  // bond (i-1, i), 0-based site i
      const int outflow_bond = i;
      for (std::size_t m = 1; m + 1 < records.size(); ++m) {
        const auto& density = [&](std::size_t t) -> const std::vector<double>& {
          return slot == 0 ? records[t].n_up : records[t].n_dn;
        };
        const double derivative =
            (density(m + 1)[static_cast<std::size_t>(i)] - density(m - 1)[static_cast<std::size_t>(i)]) /
            (2.0 * dt);
        const double net_inflow = bond_currents[static_cast<std::size_t>(slot)]
                                                [static_cast<std::size_t>(inflow_bond)][m] -
                                  bond_currents[static_cast<std::size_t>(slot)]
                                                [static_cast<std::size_t>(outflow_bond)][m];
        worst = std::max(worst, std::abs(derivative - net_inflow));
      }
    }
  }
  return worst;
}

}  // namespace hubring
