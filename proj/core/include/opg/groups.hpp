#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "opg/matrix.hpp"

namespace opg {

using Vec = std::vector<Complex>;

enum class SequenceModel { C0, Linf };

/// Diagonal multiplier group on a truncated sequence carrier:
/// alpha_t(x)_k = exp(i lambda_k t) x_k, with weights p_k = exp(lambda_k).
/// This is a one-parameter isometry group, not an automorphism group
/// (coordinatewise products are not preserved unless all lambda_k vanish).
struct DiagonalGroup {
  std::vector<double> exponents;  // lambda_k
  SequenceModel model = SequenceModel::Linf;

  /// lambda_k = k on k = 0..n-1, the integer-weight sequence model.
  static DiagonalGroup integer_model(std::size_t n, SequenceModel model = SequenceModel::Linf);

  std::size_t size() const { return exponents.size(); }
  bool is_integer_model() const;
  double max_abs_exponent() const;
};

/// Inner automorphism group of M_d: tau_t(x) = P^{it} x P^{-it} with
/// P = exp(H) for a Hermitian generator H.
class ImplementedGroup {
 public:
  explicit ImplementedGroup(const ComplexMatrix& generator);

  const ComplexMatrix& generator() const { return generator_; }
  const PositiveMatrix& implementer() const { return implementer_; }
  std::size_t dim() const { return implementer_.dim(); }

  /// Spread of the generator spectrum; bounds every multiplier frequency.
  double frequency_spread() const;

 private:
  ComplexMatrix generator_;
  PositiveMatrix implementer_;
};

/// Modular group of a faithful state rho on M_d: sigma_t(x) = rho^{it} x rho^{-it}.
/// Throws NotAState unless rho is strictly positive with unit trace.
ImplementedGroup build_modular_group(const PositiveMatrix& rho, double trace_tol = 1e-10);

/// Symbolic x_n = c * r^n for n >= start_index, 0 otherwise.  The ratio is
/// stored as log r so that exact domain predicates (r e <= 1 vs r e < 1) can
/// be decided without rounding through exp/log.  Canonical form: c = 0 forces
/// log r = 0 and start_index = 0.
class GeometricSequence {
 public:
  GeometricSequence() = default;
  static GeometricSequence with_ratio(Complex coefficient, double ratio, int start_index);
  static GeometricSequence with_log_ratio(Complex coefficient, double log_ratio, int start_index);

  Complex coefficient() const { return coefficient_; }
  double ratio() const { return std::exp(log_ratio_); }
  double log_ratio() const { return log_ratio_; }
  int start_index() const { return start_index_; }
  bool is_zero() const { return coefficient_ == Complex{0.0, 0.0}; }

  Complex value(long long n) const;
  /// Values at indices 0..n-1 (the truncated numeric carrier).
  Vec truncate(std::size_t n) const;

  friend bool operator==(const GeometricSequence& a, const GeometricSequence& b) = default;

 private:
  Complex coefficient_{0.0, 0.0};
  double log_ratio_ = 0.0;
  int start_index_ = 0;
};

/// 2x2 block element over the truncated sequence carrier; every block is a
/// diagonal operator represented by its sequence of diagonal entries.
struct CornerElement {
  Vec a, b, c, d;

  CornerElement() = default;
  CornerElement(Vec a_, Vec b_, Vec c_, Vec d_);
  std::size_t size() const { return a.size(); }
};

/// The corner embedding: u_t = diag(P^{it}, 1) acting on 2x2 blocks.  Fixes
/// the diagonal blocks and multiplies the corners by p_n^{+-it}; this turns
/// the diagonal isometry group into an inner automorphism group of the block
/// algebra.
struct EmbeddedCornerGroup {
  DiagonalGroup inner;
};

EmbeddedCornerGroup build_corner(DiagonalGroup group);

// --- group actions -------------------------------------------------------

Vec apply(const DiagonalGroup& g, double t, const Vec& x);
ComplexMatrix apply(const ImplementedGroup& g, double t, const ComplexMatrix& x);
CornerElement apply(const EmbeddedCornerGroup& g, double t, const CornerElement& x);

// --- carrier norms and plumbing ------------------------------------------

double sup_norm(const Vec& x);

/// Norm of the carrier element: sup norm for sequences, operator norm for
/// matrices, and for corner elements the block operator norm
/// sup_n || [[a_n, b_n], [c_n, d_n]] ||.
double carrier_norm(const DiagonalGroup&, const Vec& x);
double carrier_norm(const ImplementedGroup&, const ComplexMatrix& x);
double carrier_norm(const EmbeddedCornerGroup&, const CornerElement& x);

/// Linear dimension of the carrier as a coordinate space.
std::size_t carrier_dim(const DiagonalGroup& g);
std::size_t carrier_dim(const ImplementedGroup& g);
std::size_t carrier_dim(const EmbeddedCornerGroup& g);

/// Basis element #i of the carrier coordinate space.
Vec carrier_basis(const DiagonalGroup& g, std::size_t i);
ComplexMatrix carrier_basis(const ImplementedGroup& g, std::size_t i);
CornerElement carrier_basis(const EmbeddedCornerGroup& g, std::size_t i);

Vec flatten(const DiagonalGroup&, const Vec& x);
Vec flatten(const ImplementedGroup&, const ComplexMatrix& x);
Vec flatten(const EmbeddedCornerGroup&, const CornerElement& x);

Vec unflatten(const DiagonalGroup& g, const Vec& coords);
ComplexMatrix unflatten(const ImplementedGroup& g, const Vec& coords);
CornerElement unflatten(const EmbeddedCornerGroup& g, const Vec& coords);

Vec zero_element(const DiagonalGroup& g);
ComplexMatrix zero_element(const ImplementedGroup& g);
CornerElement zero_element(const EmbeddedCornerGroup& g);

Vec random_element(const DiagonalGroup& g, Rng& rng);
ComplexMatrix random_element(const ImplementedGroup& g, Rng& rng);
CornerElement random_element(const EmbeddedCornerGroup& g, Rng& rng);

/// Largest oscillation frequency of any orbit multiplier; the quadrature
/// schemes size their panels from this.
double max_frequency(const DiagonalGroup& g);
double max_frequency(const ImplementedGroup& g);
double max_frequency(const EmbeddedCornerGroup& g);

// --- exact domain predicates for the infinite sequence models -------------

struct DomainMembership {
  bool c0 = false;
  bool linf = false;
};

/// Exact membership of a geometric sequence in D(alpha_z) for the
/// integer-weight model, per infinite model.  Decided in log space from the
/// tail ratio, so boundary cases (r e = 1 at z = -i) are exact booleans.
/// Throws UnsupportedGroup unless the group has lambda_k = k.
DomainMembership in_domain_sequence(const GeometricSequence& seq, const DiagonalGroup& group,
                                    Complex z);

}  // namespace opg
