#include "hubring/basis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace hubring {

namespace {

constexpr int kMaxSites = 32;

std::uint64_t site_bit(int site) { return std::uint64_t{1} << (site - 1); }

void check_site(int site, int sites) {
  if (site < 1 || site > sites) {
    throw std::invalid_argument("site index " + std::to_string(site) +
                                " outside 1.." + std::to_string(sites));
  }
}

// Ascending enumeration of all masks over `sites` bits with exactly n bits set
// (Gosper's hack).
std::vector<std::uint64_t> masks_with_popcount(int sites, int n) {
  std::vector<std::uint64_t> masks;
  masks.reserve(binomial(sites, n));
  if (n == 0) {
    masks.push_back(0);
    return masks;
  }
  const std::uint64_t limit = std::uint64_t{1} << sites;
  std::uint64_t v = (std::uint64_t{1} << n) - 1;
  while (v < limit) {
    masks.push_back(v);
    const std::uint64_t low = v & (~v + 1);
    const std::uint64_t ripple = v + low;
    v = ripple | (((v ^ ripple) / low) >> 2);
  }
  return masks;
}

}  // namespace

void SectorSpec::validate() const {
  if (sites < 1 || sites > kMaxSites) {
    throw std::invalid_argument("site count must be in 1.." + std::to_string(kMaxSites) +
                                ", got " + std::to_string(sites));
  }
  if (n_up < 0 || n_up > sites || n_dn < 0 || n_dn > sites) {
    throw std::invalid_argument("particle counts must satisfy 0 <= N_sigma <= L, got N_up=" +
                                std::to_string(n_up) + ", N_dn=" + std::to_string(n_dn) +
                                " on L=" + std::to_string(sites));
  }
}

std::size_t SectorSpec::dimension() const {
  validate();
  return static_cast<std::size_t>(binomial(sites, n_up)) * binomial(sites, n_dn);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / i;
  return result;
}

std::optional<Hop> apply_hop(const FockState& state, int i, int j, Spin spin, int sites) {
  check_site(i, sites);
  check_site(j, sites);
  if (i == j) throw std::invalid_argument("hop requires two distinct sites");

  const std::uint64_t mask = (spin == Spin::Up) ? state.up : state.dn;
  if (!(mask & site_bit(j)) || (mask & site_bit(i))) return std::nullopt;

  const auto [lo, hi] = std::minmax(i, j);
  const std::uint64_t between = (site_bit(hi) - 1) & ~(site_bit(lo + 1) - 1);
  const int crossings = std::popcount(mask & between);

  FockState hopped = state;
  const std::uint64_t moved = (mask ^ site_bit(j)) | site_bit(i);
  (spin == Spin::Up ? hopped.up : hopped.dn) = moved;
  return Hop{hopped, (crossings % 2 == 0) ? +1 : -1};
}

int occupation(const FockState& state, int i, Spin spin, int sites) {
  check_site(i, sites);
  const std::uint64_t mask = (spin == Spin::Up) ? state.up : state.dn;
  return static_cast<int>((mask >> (i - 1)) & 1u);
}

SectorBasis::SectorBasis(const SectorSpec& spec) : spec_(spec) {
  spec_.validate();
  up_masks_ = masks_with_popcount(spec_.sites, spec_.n_up);
  dn_masks_ = masks_with_popcount(spec_.sites, spec_.n_dn);
}

FockState SectorBasis::state(std::size_t index) const {
  if (index >= size()) {
    throw std::out_of_range("basis index " + std::to_string(index) + " >= dimension " +
                            std::to_string(size()));
  }
  const std::size_t iu = index / dn_masks_.size();
  const std::size_t id = index % dn_masks_.size();
  return FockState{up_masks_[iu], dn_masks_[id]};
}

std::optional<std::size_t> SectorBasis::find(const FockState& state) const {
  const auto up_it = std::lower_bound(up_masks_.begin(), up_masks_.end(), state.up);
  if (up_it == up_masks_.end() || *up_it != state.up) return std::nullopt;
  const auto dn_it = std::lower_bound(dn_masks_.begin(), dn_masks_.end(), state.dn);
  if (dn_it == dn_masks_.end() || *dn_it != state.dn) return std::nullopt;
  const std::size_t iu = static_cast<std::size_t>(up_it - up_masks_.begin());
  const std::size_t id = static_cast<std::size_t>(dn_it - dn_masks_.begin());
  return iu * dn_masks_.size() + id;
}

std::size_t SectorBasis::index(const FockState& state) const {
  if (auto idx = find(state)) return *idx;
  throw std::out_of_range("Fock state does not belong to this sector");
}

SectorBasis enumerate_sector(const SectorSpec& spec) { return SectorBasis(spec); }

}  // namespace hubring
