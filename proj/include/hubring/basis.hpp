#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace hubring {

enum class Spin { Up, Dn };

inline constexpr const char* spin_name(Spin s) { return s == Spin::Up ? "up" : "dn"; }

/// One lattice occupation pattern. Bit (i-1) of a mask holds site i, so site
/// labels run 1..L on every public surface.
struct FockState {
  std::uint64_t up = 0;
  std::uint64_t dn = 0;

  friend constexpr auto operator<=>(const FockState&, const FockState&) = default;
};

/// Fixed particle-number sector (L, N_up, N_dn).
struct SectorSpec {
  int sites = 0;
  int n_up = 0;
  int n_dn = 0;

  /// Throws std::invalid_argument when the counts do not fit the lattice.
  void validate() const;
  /// C(L, N_up) * C(L, N_dn)
  std::size_t dimension() const;
};

/// Result of a fermionic hop: the new state and the anticommutation sign.
struct Hop {
  FockState state;
  int sign = 1;
};

/// c†_{i,σ} c_{j,σ}. Empty when Pauli-blocked (site j empty, or site i already
/// occupied, for spin σ). The sign is (-1)^k with k the number of σ-fermions
/// on sites strictly between i and j in the 1..L ordering; the ring-closing
/// bond (1, L) therefore crosses sites 2..L-1. All spin-up operators are
/// ordered before spin-down, so hops never pick up cross-species parity.
std::optional<Hop> apply_hop(const FockState& state, int i, int j, Spin spin, int sites);

/// 0/1 occupation of site i for the given spin.
int occupation(const FockState& state, int i, Spin spin, int sites);

std::uint64_t binomial(int n, int k);

/// All Fock states of a sector, sorted ascending by (up, dn) read as integers.
/// index() inverts the enumeration exactly. Immutable after construction and
/// safe to share across threads.
class SectorBasis {
 public:
  explicit SectorBasis(const SectorSpec& spec);

  const SectorSpec& spec() const { return spec_; }
  std::size_t size() const { return up_masks_.size() * dn_masks_.size(); }

  FockState state(std::size_t index) const;
  std::size_t index(const FockState& state) const;
  std::optional<std::size_t> find(const FockState& state) const;
  bool contains(const FockState& state) const { return find(state).has_value(); }

 private:
  SectorSpec spec_;
  std::vector<std::uint64_t> up_masks_;
  std::vector<std::uint64_t> dn_masks_;
};

SectorBasis enumerate_sector(const SectorSpec& spec);

}  // namespace hubring
