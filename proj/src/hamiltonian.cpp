#include "hubring/hamiltonian.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace hubring {

void BarrierSpec::validate() const {
  if (!(asymmetry >= 0.0)) {
    throw std::invalid_argument("barrier asymmetry must satisfy alpha >= 0, got " +
                                std::to_string(asymmetry));
  }
}

void ModelParams::validate() const {
  // J = 0 (frozen dynamics) is allowed as a degenerate sanity case; the CLI
  // additionally requires J > 0 since all outputs are reported in units of J.
  if (!(tunneling >= 0.0)) {
    throw std::invalid_argument("tunneling amplitude J must be >= 0, got " +
                                std::to_string(tunneling));
  }
  barrier.validate();
}

std::vector<double> barrier_potential(const BarrierSpec& barrier, int sites) {
  barrier.validate();
  if (sites < 2 || sites % 2 != 0) {
    throw std::invalid_argument("barrier layout references L/2 and requires an even site count, got " +
                                std::to_string(sites));
  }
  std::vector<double> potential(static_cast<std::size_t>(sites), 0.0);
  if (barrier.height == 0.0) return potential;
  if (sites < 6) {
    throw std::invalid_argument(
        "barrier sites 2, 3, L/2+2, L/2+3 must be distinct lattice sites; a nonzero height needs L >= 6");
  }
  potential[1] = barrier.height;                              // site 2
  potential[static_cast<std::size_t>(sites / 2 + 1)] = barrier.height;  // site L/2+2
  potential[2] = barrier.asymmetry * barrier.height;          // site 3
  potential[static_cast<std::size_t>(sites / 2 + 2)] = barrier.asymmetry * barrier.height;
  return potential;
}

SparseOperator build_hamiltonian(const SectorBasis& basis, const ModelParams& params) {
  params.validate();
  const SectorSpec& spec = basis.spec();
  const int L = spec.sites;

  std::vector<double> potential(static_cast<std::size_t>(L), 0.0);
  if (params.barrier.height != 0.0) potential = barrier_potential(params.barrier, L);

  std::vector<SparseOperator::Entry> entries;
  entries.reserve(basis.size() * static_cast<std::size_t>(2 * L + 1));

  for (std::size_t k = 0; k < basis.size(); ++k) {
    const FockState s = basis.state(k);

    double diagonal = params.interaction * std::popcount(s.up & s.dn);
    for (int i = 1; i <= L; ++i) {
      const double h_i = potential[static_cast<std::size_t>(i - 1)];
      if (h_i != 0.0) {
        diagonal += h_i * (occupation(s, i, Spin::Up, L) + occupation(s, i, Spin::Dn, L));
      }
    }
    if (diagonal != 0.0) entries.push_back({k, k, diagonal});

    if (L < 2) continue;
    for (int i = 1; i <= L; ++i) {
      const int j = (i % L) + 1;
      for (const Spin spin : {Spin::Up, Spin::Dn}) {
        for (const auto& [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
          if (const auto hop = apply_hop(s, a, b, spin, L)) {
            entries.push_back({basis.index(hop->state), k, -params.tunneling * hop->sign});
          }
        }
      }
    }
  }
  return SparseOperator(basis.size(), OperatorStructure::RealSymmetric, entries);
}

SparseOperator build_number_operator(const SectorBasis& basis, int site,
                                     std::optional<Spin> spin) {
  const int L = basis.spec().sites;
  std::vector<SparseOperator::Entry> entries;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const FockState s = basis.state(k);
    const double value = spin ? occupation(s, site, *spin, L)
                              : occupation(s, site, Spin::Up, L) + occupation(s, site, Spin::Dn, L);
    if (value != 0.0) entries.push_back({k, k, value});
  }
  return SparseOperator(basis.size(), OperatorStructure::RealSymmetric, entries);
}

}  // namespace hubring
