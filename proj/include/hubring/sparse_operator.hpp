#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstddef>
#include <vector>

namespace hubring {

/// Shape of an operator with real coefficient storage:
///   RealSymmetric:          Op =      C   with C = C^T
///   ImaginaryAntisymmetric: Op = -i * C   with C = -C^T
/// Both shapes are Hermitian. Coefficients stay real; the -i prefactor is
/// applied only when the operator acts on a complex vector.
enum class OperatorStructure { RealSymmetric, ImaginaryAntisymmetric };

class SparseOperator {
 public:
  struct Entry {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
  };

  SparseOperator() = default;
  SparseOperator(std::size_t dim, OperatorStructure structure, const std::vector<Entry>& entries);

  std::size_t dim() const { return static_cast<std::size_t>(coeff_.rows()); }
  OperatorStructure structure() const { return structure_; }
  /// True when the stored coefficients realize a Hermitian operator; verified
  /// at construction against the structure tag.
  bool hermitian() const { return hermitian_; }
  std::size_t nonzeros() const { return static_cast<std::size_t>(coeff_.nonZeros()); }
  /// Coefficient triplets with duplicates merged and exact zeros dropped.
  std::vector<Entry> entries() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  std::complex<double> expectation(const Eigen::VectorXcd& v) const;

  const Eigen::SparseMatrix<double>& coefficients() const { return coeff_; }
  Eigen::MatrixXd coefficient_dense() const { return Eigen::MatrixXd(coeff_); }
  /// The actual (complex) operator, -i prefactor included.
  Eigen::MatrixXcd dense() const;

 private:
  OperatorStructure structure_ = OperatorStructure::RealSymmetric;
  bool hermitian_ = true;
  Eigen::SparseMatrix<double> coeff_;
};

}  // namespace hubring
