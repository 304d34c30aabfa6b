#pragma once

#include <optional>
#include <vector>

#include "hubring/basis.hpp"
#include "hubring/sparse_operator.hpp"

namespace hubring {

/// Two barrier pairs on the ring: height h at sites 2 and L/2+2, scaled
/// height α·h at sites 3 and L/2+3, zero elsewhere. α = 1 restores the
/// reflection symmetry i -> L+1-i.
struct BarrierSpec {
  double height = 0.0;     // h, in units of J
  double asymmetry = 1.0;  // α >= 0

  void validate() const;
};

struct ModelParams {
  double tunneling = 1.0;    // J, the unit of energy (ħ = 1); J = 0 freezes the dynamics
  double interaction = 0.0;  // U
  BarrierSpec barrier{};

  void validate() const;
};

/// Site energies h_1..h_L (index 0 holds site 1). Requires an even site
/// count; a nonzero height additionally requires L >= 6 so the four barrier
/// sites are distinct lattice sites.
std::vector<double> barrier_potential(const BarrierSpec& barrier, int sites);

/// H = -J Σ_bonds,σ (c†_i c_j + c†_j c_i) + Σ_i (U n_up,i n_dn,i + h_i n_i)
/// over all L ring bonds (i, i+1 mod L). On L=2 the two ring bonds coincide
/// and the hop amplitude doubles; this degenerate case is allowed.
SparseOperator build_hamiltonian(const SectorBasis& basis, const ModelParams& params);

/// Diagonal operator n̂_{i,σ}, or n̂_i = n̂_{i,↑} + n̂_{i,↓} when spin is empty.
SparseOperator build_number_operator(const SectorBasis& basis, int site,
                                     std::optional<Spin> spin = std::nullopt);

}  // namespace hubring
