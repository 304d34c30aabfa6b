#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hubring/basis.hpp"
#include "hubring/common.hpp"
#include "hubring/sparse_operator.hpp"

namespace hubring {

/// Complex amplitude vector over a sector basis. The basis pointer is
/// non-owning; the basis must outlive the state.
struct QuantumState {
  const SectorBasis* basis = nullptr;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

/// Uniform output times 0, dt, 2dt, ..., t_max (t_max must be an integer
/// multiple of dt).
class TimeGrid {
 public:
  TimeGrid(double t_max, double dt);

  double t_max() const { return t_max_; }
  double dt() const { return dt_; }
  std::size_t size() const { return steps_ + 1; }
  double time(std::size_t k) const { return static_cast<double>(k) * dt_; }
  std::vector<double> times() const;

 private:
  double t_max_;
  double dt_;
  std::size_t steps_;
};

struct KrylovSettings {
  int subspace_dim = 30;          // m >= 2
  double step_tolerance = 1e-12;  // a posteriori error bound per step
  int max_halvings = 24;
};

enum class PropagatorMode { Exact, Krylov };

/// Exact mode holds the full eigendecomposition of H (built once, residuals
/// checked against 1e-10 * ||H||); Krylov mode holds the Lanczos settings.
class Propagator {
 public:
  static Propagator exact(const SparseOperator& hamiltonian);
  static Propagator krylov(const SparseOperator& hamiltonian, KrylovSettings settings = {});

  PropagatorMode mode() const { return mode_; }
  const SparseOperator& hamiltonian() const { return *hamiltonian_; }
  const Eigen::VectorXd& eigenvalues() const;
  const Eigen::MatrixXd& eigenvectors() const;
  const KrylovSettings& krylov_settings() const { return settings_; }

 private:
  Propagator(PropagatorMode mode, const SparseOperator& h) : mode_(mode), hamiltonian_(&h) {}

  PropagatorMode mode_;
  const SparseOperator* hamiltonian_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  KrylovSettings settings_{};
};

/// psi(t) = exp(-iHt) psi0 at every grid time. Exact mode synthesizes each
/// time independently from the spectral data; Krylov mode steps sequentially.
/// Norm preservation is checked to 1e-10 at every output time.
std::vector<QuantumState> evolve(const QuantumState& psi0, const TimeGrid& grid,
                                 const Propagator& propagator);

/// One Lanczos step exp(-iH dt) psi with a posteriori error control; the step
/// is halved recursively until the estimate falls below the tolerance. A
/// Lanczos breakdown means the Krylov space is exact and terminates early.
QuantumState krylov_step(const QuantumState& psi, const SparseOperator& hamiltonian, double dt,
                         const KrylovSettings& settings = {});

}  // namespace hubring
