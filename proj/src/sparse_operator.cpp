#include "hubring/sparse_operator.hpp"

#include <stdexcept>
#include <string>

namespace hubring {

namespace {

double max_abs_entry(const Eigen::SparseMatrix<double>& m) {
  double result = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      result = std::max(result, std::abs(it.value()));
    }
  }
  return result;
}

}  // namespace

SparseOperator::SparseOperator(std::size_t dim, OperatorStructure structure,
                               const std::vector<Entry>& entries)
    : structure_(structure),
      coeff_(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(entries.size());
  for (const Entry& e : entries) {
    if (e.row >= dim || e.col >= dim) {
      throw std::invalid_argument("sparse entry (" + std::to_string(e.row) + ", " +
                                  std::to_string(e.col) + ") outside dimension " +
                                  std::to_string(dim));
    }
    triplets.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
  }
  coeff_.setFromTriplets(triplets.begin(), triplets.end());
  coeff_.prune([](const Eigen::Index&, const Eigen::Index&, const double& v) { return v != 0.0; });
  coeff_.makeCompressed();

  // Hermitian iff the coefficients match the structure tag exactly.
  Eigen::SparseMatrix<double> residual =
      (structure_ == OperatorStructure::RealSymmetric)
          ? Eigen::SparseMatrix<double>(Eigen::SparseMatrix<double>(coeff_.transpose()) - coeff_)
          : Eigen::SparseMatrix<double>(Eigen::SparseMatrix<double>(coeff_.transpose()) + coeff_);
  hermitian_ = (max_abs_entry(residual) == 0.0);
}

std::vector<SparseOperator::Entry> SparseOperator::entries() const {
  std::vector<Entry> out;
  out.reserve(nonzeros());
  for (int k = 0; k < coeff_.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(coeff_, k); it; ++it) {
      out.push_back(Entry{static_cast<std::size_t>(it.row()),
                          static_cast<std::size_t>(it.col()), it.value()});
    }
  }
  return out;
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != coeff_.rows()) {
    throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                " does not match operator dimension " +
                                std::to_string(coeff_.rows()));
  }
  const Eigen::VectorXd re = coeff_ * v.real().eval();
  const Eigen::VectorXd im = coeff_ * v.imag().eval();
  Eigen::VectorXcd out(v.size());
  if (structure_ == OperatorStructure::RealSymmetric) {
    for (Eigen::Index k = 0; k < out.size(); ++k) out[k] = {re[k], im[k]};
  } else {
    // -i * (re + i*im) = im - i*re
    for (Eigen::Index k = 0; k < out.size(); ++k) out[k] = {im[k], -re[k]};
  }
  return out;
}

std::complex<double> SparseOperator::expectation(const Eigen::VectorXcd& v) const {
  return v.dot(apply(v));
}

Eigen::MatrixXcd SparseOperator::dense() const {
  const Eigen::MatrixXd c(coeff_);
  if (structure_ == OperatorStructure::RealSymmetric) {
    return c.cast<std::complex<double>>();
  }
  return std::complex<double>(0.0, -1.0) * c.cast<std::complex<double>>();
}

}  // namespace hubring
