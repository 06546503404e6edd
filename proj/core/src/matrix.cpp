#include "opg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace opg {

ComplexMatrix ComplexMatrix::identity(std::size_t d) {
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t d, std::size_t j, std::size_t k) {
  if (j >= d || k >= d) throw IndexOutOfRange("matrix unit index out of range");
  ComplexMatrix m(d, d);
  m(j, k) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  ComplexMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = std::conj(data_[i]);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  const std::size_t d = std::min(rows_, cols_);
  for (std::size_t i = 0; i < d; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs_entry() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeMismatch("matrix addition shape");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeMismatch("matrix subtraction shape");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& v : data_) v *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw ShapeMismatch("matrix product shape");
  ComplexMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i) {
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& a, double hermiticity_tol) {
  if (!a.square()) throw ShapeMismatch("eig_hermitian needs a square matrix");
  if (!a.all_finite()) throw Error("eig_hermitian: non-finite entries");
  const std::size_t d = a.rows();

  const double scale = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
  double defect = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      defect = std::max(defect, std::abs(a(i, j) - std::conj(a(j, i))));
  if (defect > hermiticity_tol * scale)
    throw NotHermitian("symmetry defect " + std::to_string(defect) + " exceeds tolerance");

  // Work on the symmetrised copy; cyclic sweeps over all off-diagonal pairs.
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(d);

  const int max_sweeps = 60;
  const double stop = 1e-15 * scale;
  bool converged = (d <= 1) || off_diagonal_norm(m) <= stop;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const Complex apq = m(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) {
          m(p, q) = m(q, p) = 0.0;
          continue;
        }
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const Complex phase = apq / r;  // apq = r * phase
        // Rotation angle for the phase-stripped real 2x2 [[app, r], [r, aqq]].
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U embeds [[c, s], [-s conj(phase)... ]] so that U* M U kills (p, q).
        const Complex u11 = c;
        const Complex u12 = s;
        const Complex u21 = -s * std::conj(phase);
        const Complex u22 = c * std::conj(phase);

        // Columns: M <- M U.
        for (std::size_t i = 0; i < d; ++i) {
          const Complex mp = m(i, p);
          const Complex mq = m(i, q);
          m(i, p) = mp * u11 + mq * u21;
          m(i, q) = mp * u12 + mq * u22;
        }
        // Rows: M <- U* M.
        for (std::size_t j = 0; j < d; ++j) {
          const Complex mp = m(p, j);
          const Complex mq = m(q, j);
          m(p, j) = std::conj(u11) * mp + std::conj(u21) * mq;
          m(q, j) = std::conj(u12) * mp + std::conj(u22) * mq;
        }
        m(p, q) = m(q, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(q, q) = m(q, q).real();

        // Accumulate eigenvectors: V <- V U.
        for (std::size_t i = 0; i < d; ++i) {
          const Complex vp = v(i, p);
          const Complex vq = v(i, q);
          v(i, p) = vp * u11 + vq * u21;
          v(i, q) = vp * u12 + vq * u22;
        }
      }
    }
    converged = off_diagonal_norm(m) <= stop;
  }
  if (!converged) throw ConvergenceFailure("Jacobi sweeps did not reach the target accuracy");

  std::vector<double> lam(d);
  for (std::size_t i = 0; i < d; ++i) lam[i] = m(i, i).real();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return lam[i] < lam[j]; });

  EigenDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors = ComplexMatrix(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    out.eigenvalues[j] = lam[order[j]];
    for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

PositiveMatrix::PositiveMatrix(const ComplexMatrix& a, double positivity_tol) {
  EigenDecomposition eig = eig_hermitian(a);
  const double max_eig = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  const double min_eig = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
  if (!(min_eig > positivity_tol * std::max(max_eig, 0.0)))
    throw NotPositive("matrix is not strictly positive (min eigenvalue " +
                      std::to_string(min_eig) + ")");
  matrix_ = a;
  eigenvectors_ = std::move(eig.eigenvectors);
  eigenvalues_ = std::move(eig.eigenvalues);
  log_eigenvalues_.resize(eigenvalues_.size());
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i)
    log_eigenvalues_[i] = std::log(eigenvalues_[i]);
}

PositiveMatrix::PositiveMatrix(ComplexMatrix eigenvectors, std::vector<double> log_eigenvalues)
    : eigenvectors_(std::move(eigenvectors)), log_eigenvalues_(std::move(log_eigenvalues)) {
  if (eigenvectors_.rows() != eigenvectors_.cols() ||
      eigenvectors_.rows() != log_eigenvalues_.size())
    throw ShapeMismatch("PositiveMatrix spectral constructor shape");
  const std::size_t d = log_eigenvalues_.size();
  eigenvalues_.resize(d);
  for (std::size_t i = 0; i < d; ++i) eigenvalues_[i] = std::exp(log_eigenvalues_[i]);
  ComplexMatrix lam = ComplexMatrix::diagonal(std::span<const double>(eigenvalues_));
  matrix_ = eigenvectors_ * lam * eigenvectors_.adjoint();
  // symmetrise away the rounding from the triple product
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Complex m = 0.5 * (matrix_(i, j) + std::conj(matrix_(j, i)));
      matrix_(i, j) = m;
      matrix_(j, i) = std::conj(m);
    }
}

ComplexMatrix matrix_power(const PositiveMatrix& p, Complex w) {
  const std::size_t d = p.dim();
  std::vector<Complex> powers(d);
  for (std::size_t i = 0; i < d; ++i) powers[i] = std::exp(w * p.log_eigenvalues()[i]);
  const ComplexMatrix& v = p.eigenvectors();
  return v * ComplexMatrix::diagonal(std::span<const Complex>(powers)) * v.adjoint();
}

double op_norm(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  // Largest eigenvalue of A* A; Jacobi keeps high relative accuracy here.
  ComplexMatrix gram = a.adjoint() * a;
  EigenDecomposition eig = eig_hermitian(gram, 1e-6);
  double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  return std::sqrt(std::max(top, 0.0));
}

namespace detail {

namespace {

Complex dot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(const std::vector<Complex>& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace

std::vector<std::vector<Complex>> orthonormal_basis(const std::vector<std::vector<Complex>>& vecs,
                                                    double drop_tol) {
  std::vector<std::vector<Complex>> basis;
  for (const auto& v : vecs) {
    const double original = norm2(v);
    if (original == 0.0) continue;
    std::vector<Complex> w = v;
    // modified Gram-Schmidt, twice for stability
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        Complex c = dot(q, w);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
      }
    }
    const double remaining = norm2(w);
    if (remaining <= drop_tol * original) continue;
    for (auto& x : w) x /= remaining;
    basis.push_back(std::move(w));
  }
  return basis;
}

}  // namespace detail

namespace {

std::vector<std::vector<Complex>> flatten_all(std::span<const ComplexMatrix> s, std::size_t rows,
                                              std::size_t cols) {
  std::vector<std::vector<Complex>> out;
  out.reserve(s.size());
  for (const auto& m : s) {
    if (m.rows() != rows || m.cols() != cols)
      throw ShapeMismatch("subspace comparison needs equally shaped matrices");
    out.emplace_back(m.entries().begin(), m.entries().end());
  }
  return out;
}

double projection_residual(const std::vector<std::vector<Complex>>& from,
                           const std::vector<std::vector<Complex>>& onto) {
  double worst = 0.0;
  for (const auto& q : from) {
    std::vector<Complex> w = q;
    for (const auto& b : onto) {
      Complex c = detail::dot(b, w);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
    }
    worst = std::max(worst, detail::norm2(w));
  }
  return worst;
}

}  // namespace

double subspace_residual(std::span<const ComplexMatrix> s1, std::span<const ComplexMatrix> s2) {
  std::size_t rows = 0, cols = 0;
  if (!s1.empty()) {
    rows = s1.front().rows();
    cols = s1.front().cols();
  } else if (!s2.empty()) {
    rows = s2.front().rows();
    cols = s2.front().cols();
  } else {
    return 0.0;
  }
  auto b1 = detail::orthonormal_basis(flatten_all(s1, rows, cols));
  auto b2 = detail::orthonormal_basis(flatten_all(s2, rows, cols));
  if (b1.size() != b2.size()) return std::numeric_limits<double>::infinity();
  return std::max(projection_residual(b1, b2), projection_residual(b2, b1));
}

bool subspace_equal(std::span<const ComplexMatrix> s1, std::span<const ComplexMatrix> s2,
                    double tol) {
  return subspace_residual(s1, s2) <= tol;
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

ComplexMatrix random_hermitian(std::size_t d, Rng& rng, double scale) {
  ComplexMatrix g = random_matrix(d, d, rng);
  ComplexMatrix h(d, d);
  // entries ~ scale/sqrt(d) keeps the spectrum roughly within [-2 scale, 2 scale]
  const double s = scale / std::sqrt(static_cast<double>(std::max<std::size_t>(d, 1)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) h(i, j) = 0.5 * s * (g(i, j) + std::conj(g(j, i)));
  return h;
}

ComplexMatrix random_density(std::size_t d, Rng& rng, double min_eig) {
  // Eigenvalues drawn from [min_eig, 1] before trace normalisation, so the
  // condition number stays near 1/min_eig; modular identities evaluated in
  // double need that bound.
  std::vector<double> eigs(d);
  double sum = 0.0;
  for (auto& e : eigs) {
    e = min_eig + (1.0 - min_eig) * rng.uniform();
    sum += e;
  }
  for (auto& e : eigs) e /= sum;
  EigenDecomposition basis = eig_hermitian(random_hermitian(d, rng));
  ComplexMatrix w = basis.eigenvectors * ComplexMatrix::diagonal(std::span<const double>(eigs)) *
                    basis.eigenvectors.adjoint();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Complex m = 0.5 * (w(i, j) + std::conj(w(j, i)));
      w(i, j) = m;
      w(j, i) = std::conj(m);
    }
  return w;
}

}  // namespace opg
