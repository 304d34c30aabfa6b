#pragma once

// Brute-force second-quantization oracle for the tests. A state is a linear
// combination of creation-operator strings applied to the vacuum; operators
// act by explicit adjacent anticommutations, one sign flip per transposition.
// Deliberately independent of the production bitmask/parity implementation.

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "hubring/basis.hpp"
#include "hubring/hamiltonian.hpp"

namespace naive {

using hubring::FockState;
using hubring::SectorBasis;
using hubring::Spin;

// Mode numbering: spin-up site i -> i-1, spin-down site i -> L+i-1, so every
// up operator precedes every down operator in the canonical string.
inline int mode_of(int site, Spin spin, int sites) {
  return (spin == Spin::Up ? 0 : sites) + site - 1;
}

struct Expansion {
  // canonical (ascending) operator string -> coefficient
  std::map<std::vector<int>, double> terms;
};

inline Expansion vacuum() {
  Expansion e;
  e.terms[{}] = 1.0;
  return e;
}

inline void add_term(Expansion& e, std::vector<int> modes, double coeff) {
  if (coeff == 0.0) return;
  auto [it, inserted] = e.terms.emplace(std::move(modes), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) e.terms.erase(it);
  }
}

// c†_m: prepend, then bubble right into ascending position.
inline Expansion create(int mode, const Expansion& in) {
  Expansion out;
  for (const auto& [modes, coeff] : in.terms) {
    std::vector<int> string;
    string.reserve(modes.size() + 1);
    string.push_back(mode);
    string.insert(string.end(), modes.begin(), modes.end());
    double sign = 1.0;
    bool vanished = false;
    for (std::size_t k = 0; k + 1 < string.size(); ++k) {
      if (string[k] == string[k + 1]) {
        vanished = true;  // (c†_m)^2 = 0
        break;
      }
      if (string[k] > string[k + 1]) {
        std::swap(string[k], string[k + 1]);
        sign = -sign;
      } else {
        break;
      }
    }
    if (vanished) continue;
    add_term(out, std::move(string), sign * coeff);
  }
  return out;
}

// c_m: anticommute rightward through the string until the matching creation
// operator pairs off; a string without it annihilates against the vacuum.
inline Expansion annihilate(int mode, const Expansion& in) {
  Expansion out;
  for (const auto& [modes, coeff] : in.terms) {
    double sign = 1.0;
    bool found = false;
    std::vector<int> rest;
    rest.reserve(modes.size());
    for (const int m : modes) {
      if (!found && m == mode) {
        found = true;
        continue;
      }
      if (!found) sign = -sign;
      rest.push_back(m);
    }
    if (!found) continue;
    add_term(out, std::move(rest), sign * coeff);
  }
  return out;
}

inline std::vector<int> modes_of(const FockState& s, int sites) {
  std::vector<int> modes;
  for (int i = 1; i <= sites; ++i) {
    if ((s.up >> (i - 1)) & 1) modes.push_back(mode_of(i, Spin::Up, sites));
  }
  for (int i = 1; i <= sites; ++i) {
    if ((s.dn >> (i - 1)) & 1) modes.push_back(mode_of(i, Spin::Dn, sites));
  }
  return modes;
}

inline Expansion from_fock(const FockState& s, int sites) {
  Expansion e;
  e.terms[modes_of(s, sites)] = 1.0;
  return e;
}

inline FockState fock_of(const std::vector<int>& modes, int sites) {
  FockState s;
  for (const int m : modes) {
    if (m < sites) {
      s.up |= std::uint64_t{1} << m;
    } else {
      s.dn |= std::uint64_t{1} << (m - sites);
    }
  }
  return s;
}

// c†_{i,σ} c_{j,σ} on a Fock state; sign 0 encodes annihilation.
inline std::pair<FockState, int> hop(const FockState& s, int i, int j, Spin spin, int sites) {
  const Expansion e = create(mode_of(i, spin, sites),
                             annihilate(mode_of(j, spin, sites), from_fock(s, sites)));
  if (e.terms.empty()) return {FockState{}, 0};
  const auto& [modes, coeff] = *e.terms.begin();
  return {fock_of(modes, sites), static_cast<int>(coeff)};
}

// Full Hamiltonian matrix assembled term by term through the naive algebra.
inline Eigen::MatrixXd hamiltonian_matrix(const SectorBasis& basis,
                                          const hubring::ModelParams& params) {
  const int L = basis.spec().sites;
  std::vector<double> potential(static_cast<std::size_t>(L), 0.0);
  if (params.barrier.height != 0.0) potential = hubring::barrier_potential(params.barrier, L);

  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd matrix = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const FockState s = basis.state(k);
    const auto col = static_cast<Eigen::Index>(k);

    double diagonal = 0.0;
    for (int i = 1; i <= L; ++i) {
      const bool up = hubring::occupation(s, i, Spin::Up, L) != 0;
      const bool dn = hubring::occupation(s, i, Spin::Dn, L) != 0;
      if (up && dn) diagonal += params.interaction;
      diagonal += potential[static_cast<std::size_t>(i - 1)] *
                  (static_cast<int>(up) + static_cast<int>(dn));
    }
    matrix(col, col) += diagonal;

    if (L < 2) continue;
    for (int i = 1; i <= L; ++i) {
      const int j = (i % L) + 1;
      for (const Spin spin : {Spin::Up, Spin::Dn}) {
        for (const auto& [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
          const Expansion e = create(mode_of(a, spin, L),
                                     annihilate(mode_of(b, spin, L), from_fock(s, L)));
          for (const auto& [modes, coeff] : e.terms) {
            const auto row = static_cast<Eigen::Index>(basis.index(fock_of(modes, L)));
            matrix(row, col) += -params.tunneling * coeff;
          }
        }
      }
    }
  }
  return matrix;
}

// Unitary matrix of a site permutation (1-based images), fermionic signs
// included: each basis string is rebuilt operator by operator.
inline Eigen::MatrixXd permutation_operator(const SectorBasis& basis,
                                            const std::vector<int>& images) {
  const int L = basis.spec().sites;
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd matrix = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto modes = modes_of(basis.state(k), L);
    Expansion e = vacuum();
    for (auto it = modes.rbegin(); it != modes.rend(); ++it) {
      const int site = (*it < L ? *it : *it - L) + 1;
      const Spin spin = *it < L ? Spin::Up : Spin::Dn;
      e = create(mode_of(images[static_cast<std::size_t>(site - 1)], spin, L), e);
    }
    const auto& [string, coeff] = *e.terms.begin();
    matrix(static_cast<Eigen::Index>(basis.index(fock_of(string, L))),
           static_cast<Eigen::Index>(k)) = coeff;
  }
  return matrix;
}

}  // namespace naive
