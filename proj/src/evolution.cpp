#include "hubring/evolution.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace hubring {

namespace {

using Complex = std::complex<double>;
constexpr Complex kImag{0.0, 1.0};

Eigen::VectorXcd real_matrix_times_complex(const Eigen::MatrixXd& m, const Eigen::VectorXcd& v) {
  const Eigen::VectorXd re = m * v.real().eval();
  const Eigen::VectorXd im = m * v.imag().eval();
  Eigen::VectorXcd out(m.rows());
  for (Eigen::Index k = 0; k < out.size(); ++k) out[k] = {re[k], im[k]};
  return out;
}

void check_unit_norm(const QuantumState& psi, const char* where) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw NumericalError(std::string(where) + ": state norm " + std::to_string(psi.norm()) +
                         " deviates from 1 beyond 1e-10");
  }
}

struct LanczosStep {
  Eigen::VectorXcd state;
  double error_estimate = 0.0;
};

// exp(-iH dt) v in the Krylov space of dimension at most m, with full
// reorthogonalization. Returns the standard residual-coupling error estimate
// beta_m * |last component of the small solution|; a breakdown (beta ~ 0)
// makes the subspace exact and the estimate resets to zero.
LanczosStep lanczos_exponential(const SparseOperator& h, const Eigen::VectorXcd& v, double dt,
                                int m) {
  const Eigen::Index n = v.size();
  const double vnorm = v.norm();
  const int m_max = static_cast<int>(std::min<Eigen::Index>(m, n));

  Eigen::MatrixXcd basis(n, m_max);
  Eigen::VectorXd alpha(m_max);
  Eigen::VectorXd beta(std::max(m_max - 1, 1));
  basis.col(0) = v / vnorm;

  int k_eff = m_max;
  double next_beta = 0.0;
  bool breakdown = false;
  constexpr double kBreakdownTol = 1e-12;

  for (int k = 0; k < m_max; ++k) {
    Eigen::VectorXcd w = h.apply(basis.col(k));
    alpha[k] = basis.col(k).dot(w).real();
    w -= alpha[k] * basis.col(k);
    if (k > 0) w -= beta[k - 1] * basis.col(k - 1);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j <= k; ++j) w -= basis.col(j).dot(w) * basis.col(j);
    }
    const double b = w.norm();
    if (k + 1 < m_max) {
      if (b <= kBreakdownTol) {
        k_eff = k + 1;
        breakdown = true;
        break;
      }
      beta[k] = b;
      basis.col(k + 1) = w / b;
    } else {
      next_beta = b;
    }
  }

  Eigen::MatrixXd tridiag = Eigen::MatrixXd::Zero(k_eff, k_eff);
  for (int k = 0; k < k_eff; ++k) {
    tridiag(k, k) = alpha[k];
    if (k + 1 < k_eff) {
      tridiag(k, k + 1) = beta[k];
      tridiag(k + 1, k) = beta[k];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tridiag);
  if (small.info() != Eigen::Success) {
    throw NumericalError("Lanczos tridiagonal eigendecomposition failed");
  }
  const Eigen::VectorXd overlap = small.eigenvectors().row(0).transpose();
  Eigen::VectorXcd phased(k_eff);
  for (int k = 0; k < k_eff; ++k) {
    phased[k] = std::exp(-kImag * small.eigenvalues()[k] * dt) * overlap[k];
  }
  const Eigen::VectorXcd small_solution = small.eigenvectors() * phased;

  LanczosStep out;
  out.state = vnorm * (basis.leftCols(k_eff) * small_solution);
  out.error_estimate = breakdown ? 0.0 : next_beta * std::abs(small_solution[k_eff - 1]);
  return out;
}

Eigen::VectorXcd krylov_advance(const SparseOperator& h, const Eigen::VectorXcd& v, double dt,
                                const KrylovSettings& settings, int depth) {
  const LanczosStep step = lanczos_exponential(h, v, dt, settings.subspace_dim);
  if (step.error_estimate <= settings.step_tolerance) return step.state;
  if (depth >= settings.max_halvings) {
    throw NumericalError("Krylov propagation did not reach tolerance " +
                         std::to_string(settings.step_tolerance) + " for a step of dt = " +
                         std::to_string(dt) + " after " + std::to_string(depth) + " halvings");
  }
  const Eigen::VectorXcd half = krylov_advance(h, v, dt / 2.0, settings, depth + 1);
  return krylov_advance(h, half, dt / 2.0, settings, depth + 1);
}

void validate_krylov_settings(const KrylovSettings& s) {
  if (s.subspace_dim < 2) {
    throw std::invalid_argument("Krylov subspace dimension must be >= 2, got " +
                                std::to_string(s.subspace_dim));
  }
  if (!(s.step_tolerance > 0.0)) {
    throw std::invalid_argument("Krylov step tolerance must be positive");
  }
}

}  // namespace

TimeGrid::TimeGrid(double t_max, double dt) : t_max_(t_max), dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time grid requires dt > 0");
  if (!(t_max >= 0.0)) throw std::invalid_argument("time grid requires t_max >= 0");
  const double ratio = t_max / dt;
  steps_ = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(static_cast<double>(steps_) * dt - t_max) > 1e-9 * std::max(1.0, t_max)) {
    throw std::invalid_argument("t_max must be an integer multiple of dt");
  }
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = time(k);
  return out;
}

Propagator Propagator::exact(const SparseOperator& hamiltonian) {
  if (hamiltonian.structure() != OperatorStructure::RealSymmetric || !hamiltonian.hermitian()) {
    throw std::invalid_argument("exact propagation requires a real symmetric Hamiltonian");
  }
  Propagator p(PropagatorMode::Exact, hamiltonian);
  const Eigen::MatrixXd dense = hamiltonian.coefficient_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hamiltonian eigendecomposition failed");
  }
  p.eigenvalues_ = solver.eigenvalues();
  p.eigenvectors_ = solver.eigenvectors();

  const double scale = p.eigenvalues_.size() > 0 ? p.eigenvalues_.cwiseAbs().maxCoeff() : 0.0;
  const Eigen::MatrixXd residual =
      dense * p.eigenvectors_ - p.eigenvectors_ * p.eigenvalues_.asDiagonal();
  const double worst = residual.colwise().norm().maxCoeff();
  if (worst > 1e-10 * std::max(scale, 1e-300)) {
    throw NumericalError("eigenpair residual " + std::to_string(worst) +
                         " exceeds 1e-10 * ||H|| = " + std::to_string(1e-10 * scale));
  }
  return p;
}

Propagator Propagator::krylov(const SparseOperator& hamiltonian, KrylovSettings settings) {
  if (hamiltonian.structure() != OperatorStructure::RealSymmetric || !hamiltonian.hermitian()) {
    throw std::invalid_argument("Krylov propagation requires a real symmetric Hamiltonian");
  }
  validate_krylov_settings(settings);
  Propagator p(PropagatorMode::Krylov, hamiltonian);
  p.settings_ = settings;
  return p;
}

const Eigen::VectorXd& Propagator::eigenvalues() const {
  if (mode_ != PropagatorMode::Exact) {
    throw std::logic_error("eigenvalues are only available in exact mode");
  }
  return eigenvalues_;
}

const Eigen::MatrixXd& Propagator::eigenvectors() const {
  if (mode_ != PropagatorMode::Exact) {
    throw std::logic_error("eigenvectors are only available in exact mode");
  }
  return eigenvectors_;
}

std::vector<QuantumState> evolve(const QuantumState& psi0, const TimeGrid& grid,
                                 const Propagator& propagator) {
  if (psi0.amplitudes.size() != static_cast<Eigen::Index>(propagator.hamiltonian().dim())) {
    throw std::invalid_argument("state dimension does not match the Hamiltonian");
  }
  check_unit_norm(psi0, "evolve: initial state");

  std::vector<QuantumState> states;
  states.reserve(grid.size());

  if (propagator.mode() == PropagatorMode::Exact) {
    const Eigen::MatrixXd& vecs = propagator.eigenvectors();
    const Eigen::VectorXd& vals = propagator.eigenvalues();
    const Eigen::VectorXcd coeffs = real_matrix_times_complex(vecs.transpose(), psi0.amplitudes);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double t = grid.time(k);
      if (t == 0.0) {
        states.push_back(psi0);  // exp(0) is the identity
        continue;
      }
      Eigen::VectorXcd phased(coeffs.size());
      for (Eigen::Index e = 0; e < coeffs.size(); ++e) {
        phased[e] = std::exp(-kImag * vals[e] * t) * coeffs[e];
      }
      QuantumState psi{psi0.basis, real_matrix_times_complex(vecs, phased)};
      check_unit_norm(psi, "evolve: exact mode output");
      states.push_back(std::move(psi));
    }
    return states;
  }

  states.push_back(psi0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    QuantumState next =
        krylov_step(states.back(), propagator.hamiltonian(), grid.dt(), propagator.krylov_settings());
    check_unit_norm(next, "evolve: Krylov mode output");
    states.push_back(std::move(next));
  }
  return states;
}

QuantumState krylov_step(const QuantumState& psi, const SparseOperator& hamiltonian, double dt,
                         const KrylovSettings& settings) {
  validate_krylov_settings(settings);
  if (!(dt >= 0.0)) throw std::invalid_argument("krylov_step requires dt >= 0");
  if (psi.amplitudes.size() != static_cast<Eigen::Index>(hamiltonian.dim())) {
    throw std::invalid_argument("state dimension does not match the Hamiltonian");
  }
  if (dt == 0.0) return psi;
  return QuantumState{psi.basis, krylov_advance(hamiltonian, psi.amplitudes, dt, settings, 0)};
}

}  // namespace hubring
