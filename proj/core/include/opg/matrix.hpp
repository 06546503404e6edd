#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "opg/errors.hpp"
#include "opg/rng.hpp"

namespace opg {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage.  Values are immutable in spirit:
/// every operation returns a fresh matrix, and nothing in the library mutates
/// a matrix after it has been handed out.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

  static ComplexMatrix identity(std::size_t d);
  /// Matrix unit e_{jk} in M_d: 1 in row j, column k (0-based).
  static ComplexMatrix unit(std::size_t d, std::size_t j, std::size_t k);
  static ComplexMatrix diagonal(std::span<const double> entries);
  static ComplexMatrix diagonal(std::span<const Complex> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs_entry() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex scalar) { return m *= scalar; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Spectral data of a Hermitian matrix: ascending eigenvalues and a unitary
/// whose columns are the matching eigenvectors.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  std::size_t dim() const { return eigenvalues.size(); }
};

/// Hermitian eigendecomposition by cyclic Jacobi sweeps.  Chosen over a
/// library call so the spectral calculus underneath every group evaluation
/// has no external numerical dependencies; at d <= 64 it is both fast and
/// accurate to near machine precision.
///
/// Throws NotHermitian when the symmetry defect exceeds `hermiticity_tol`
/// relative to the matrix scale, and ConvergenceFailure if sweeps stall.
EigenDecomposition eig_hermitian(const ComplexMatrix& a, double hermiticity_tol = 1e-12);

/// Strictly positive matrix with cached spectral data.  Eigenvalues are kept
/// together with their logarithms so that complex powers never round-trip
/// through exp/log pairs.
class PositiveMatrix {
 public:
  /// From a Hermitian matrix; throws NotPositive unless
  /// min eigenvalue > positivity_tol * max eigenvalue.
  explicit PositiveMatrix(const ComplexMatrix& a, double positivity_tol = 1e-12);

  /// From spectral data with prescribed logarithms: the matrix is
  /// V diag(exp(log_eigenvalues)) V*.
  PositiveMatrix(ComplexMatrix eigenvectors, std::vector<double> log_eigenvalues);

  const ComplexMatrix& matrix() const { return matrix_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const std::vector<double>& log_eigenvalues() const { return log_eigenvalues_; }
  std::size_t dim() const { return eigenvalues_.size(); }

 private:
  ComplexMatrix matrix_;
  ComplexMatrix eigenvectors_;
  std::vector<double> eigenvalues_;
  std::vector<double> log_eigenvalues_;
};

/// P^w for complex w via spectral calculus on the positive real branch:
/// V diag(exp(w log lambda_k)) V*.
ComplexMatrix matrix_power(const PositiveMatrix& p, Complex w);

/// Largest singular value.
double op_norm(const ComplexMatrix& a);

/// Whether two lists of equally-shaped matrices span the same subspace of the
/// flattened coordinate space: equal ranks and mutual projection residuals
/// bounded by `tol`.  Throws ShapeMismatch on inconsistent shapes.
bool subspace_equal(std::span<const ComplexMatrix> s1, std::span<const ComplexMatrix> s2,
                    double tol);

/// Largest mutual projection residual between the two spans (infinity when the
/// ranks differ).  subspace_equal is `residual <= tol`.
double subspace_residual(std::span<const ComplexMatrix> s1, std::span<const ComplexMatrix> s2);

/// Random matrix with independent complex-normal entries.
ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Random Hermitian matrix, spectrum roughly within [-scale, scale].
ComplexMatrix random_hermitian(std::size_t d, Rng& rng, double scale = 1.0);

/// Random faithful density: positive definite, trace one, eigenvalue ratio
/// bounded by roughly 1/min_eig.
ComplexMatrix random_density(std::size_t d, Rng& rng, double min_eig = 0.1);

namespace detail {

/// Orthonormal basis (columns) of the span of the given vectors, with rank
/// decided by `drop_tol` relative to each vector's norm.
std::vector<std::vector<Complex>> orthonormal_basis(const std::vector<std::vector<Complex>>& vecs,
                                                    double drop_tol = 1e-10);

}  // namespace detail

}  // namespace opg
