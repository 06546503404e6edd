#include "opg/groups.hpp"

#include <algorithm>
#include <cmath>

namespace opg {

DiagonalGroup DiagonalGroup::integer_model(std::size_t n, SequenceModel model) {
  DiagonalGroup g;
  g.exponents.resize(n);
  for (std::size_t k = 0; k < n; ++k) g.exponents[k] = static_cast<double>(k);
  g.model = model;
  return g;
}

bool DiagonalGroup::is_integer_model() const {
  for (std::size_t k = 0; k < exponents.size(); ++k)
    if (exponents[k] != static_cast<double>(k)) return false;
  return true;
}

double DiagonalGroup::max_abs_exponent() const {
  double m = 0.0;
  for (double e : exponents) m = std::max(m, std::abs(e));
  return m;
}

namespace {

PositiveMatrix exponential_of(const ComplexMatrix& h) {
  EigenDecomposition eig = eig_hermitian(h);
  // P = exp(H): reuse H's eigenvalues as the logarithms directly
  return PositiveMatrix(eig.eigenvectors, eig.eigenvalues);
}

}  // namespace

ImplementedGroup::ImplementedGroup(const ComplexMatrix& generator)
    : generator_(generator), implementer_(exponential_of(generator)) {}

double ImplementedGroup::frequency_spread() const {
  const auto& logs = implementer_.log_eigenvalues();
  if (logs.empty()) return 0.0;
  auto [mn, mx] = std::minmax_element(logs.begin(), logs.end());
  return *mx - *mn;
}

ImplementedGroup build_modular_group(const PositiveMatrix& rho, double trace_tol) {
  Complex tr = rho.matrix().trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > trace_tol)
    throw NotAState("density trace is " + std::to_string(tr.real()) + ", expected 1");
  ComplexMatrix h = rho.eigenvectors() *
                    ComplexMatrix::diagonal(std::span<const double>(rho.log_eigenvalues())) *
                    rho.eigenvectors().adjoint();
  // H = log(rho) is Hermitian up to rounding of the triple product
  const std::size_t d = h.rows();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Complex m = 0.5 * (h(i, j) + std::conj(h(j, i)));
      h(i, j) = m;
      h(j, i) = std::conj(m);
    }
  return ImplementedGroup(h);
}

GeometricSequence GeometricSequence::with_ratio(Complex coefficient, double ratio,
                                                int start_index) {
  if (!(ratio > 0.0)) throw NotPositive("geometric ratio must be positive");
  return with_log_ratio(coefficient, std::log(ratio), start_index);
}

GeometricSequence GeometricSequence::with_log_ratio(Complex coefficient, double log_ratio,
                                                    int start_index) {
  GeometricSequence s;
  if (coefficient == Complex{0.0, 0.0}) return s;  // canonical zero
  s.coefficient_ = coefficient;
  s.log_ratio_ = log_ratio;
  s.start_index_ = start_index;
  return s;
}

Complex GeometricSequence::value(long long n) const {
  if (is_zero() || n < start_index_) return {0.0, 0.0};
  return coefficient_ * std::exp(log_ratio_ * static_cast<double>(n));
}

Vec GeometricSequence::truncate(std::size_t n) const {
  Vec out(n, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) out[k] = value(static_cast<long long>(k));
  return out;
}

CornerElement::CornerElement(Vec a_, Vec b_, Vec c_, Vec d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
  if (a.size() != b.size() || a.size() != c.size() || a.size() != d.size())
    throw ShapeMismatch("corner element blocks must share one truncation length");
}

EmbeddedCornerGroup build_corner(DiagonalGroup group) { return EmbeddedCornerGroup{std::move(group)}; }

Vec apply(const DiagonalGroup& g, double t, const Vec& x) {
  if (x.size() != g.size()) throw ShapeMismatch("sequence length does not match the group");
  Vec out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    out[k] = x[k] * std::polar(1.0, g.exponents[k] * t);
  return out;
}

ComplexMatrix apply(const ImplementedGroup& g, double t, const ComplexMatrix& x) {
  if (x.rows() != g.dim() || x.cols() != g.dim())
    throw ShapeMismatch("matrix does not match the group dimension");
  ComplexMatrix u = matrix_power(g.implementer(), Complex{0.0, t});
  return u * x * u.adjoint();
}

CornerElement apply(const EmbeddedCornerGroup& g, double t, const CornerElement& x) {
  if (x.size() != g.inner.size()) throw ShapeMismatch("corner element does not match the group");
  CornerElement out = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Complex m = std::polar(1.0, g.inner.exponents[k] * t);
    out.b[k] = x.b[k] * m;
    out.c[k] = x.c[k] * std::conj(m);
  }
  return out;
}

double sup_norm(const Vec& x) {
  double m = 0.0;
  for (const auto& v : x) m = std::max(m, std::abs(v));
  return m;
}

double carrier_norm(const DiagonalGroup&, const Vec& x) { return sup_norm(x); }

double carrier_norm(const ImplementedGroup&, const ComplexMatrix& x) { return op_norm(x); }

namespace {

// Operator norm of a 2x2 complex matrix in closed form.
double two_by_two_norm(Complex a, Complex b, Complex c, Complex d) {
  const double g11 = std::norm(a) + std::norm(c);
  const double g22 = std::norm(b) + std::norm(d);
  const Complex g12 = std::conj(a) * b + std::conj(c) * d;
  const double mean = 0.5 * (g11 + g22);
  const double disc = std::sqrt(std::max(0.25 * (g11 - g22) * (g11 - g22) + std::norm(g12), 0.0));
  return std::sqrt(std::max(mean + disc, 0.0));
}

}  // namespace

double carrier_norm(const EmbeddedCornerGroup&, const CornerElement& x) {
  double m = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k)
    m = std::max(m, two_by_two_norm(x.a[k], x.b[k], x.c[k], x.d[k]));
  return m;
}

std::size_t carrier_dim(const DiagonalGroup& g) { return g.size(); }
std::size_t carrier_dim(const ImplementedGroup& g) { return g.dim() * g.dim(); }
std::size_t carrier_dim(const EmbeddedCornerGroup& g) { return 4 * g.inner.size(); }

Vec carrier_basis(const DiagonalGroup& g, std::size_t i) {
  if (i >= carrier_dim(g)) throw IndexOutOfRange("carrier basis index");
  Vec x(g.size(), Complex{0.0, 0.0});
  x[i] = 1.0;
  return x;
}

ComplexMatrix carrier_basis(const ImplementedGroup& g, std::size_t i) {
  if (i >= carrier_dim(g)) throw IndexOutOfRange("carrier basis index");
  return ComplexMatrix::unit(g.dim(), i / g.dim(), i % g.dim());
}

CornerElement carrier_basis(const EmbeddedCornerGroup& g, std::size_t i) {
  if (i >= carrier_dim(g)) throw IndexOutOfRange("carrier basis index");
  const std::size_t n = g.inner.size();
  CornerElement x{Vec(n), Vec(n), Vec(n), Vec(n)};
  Vec* blocks[4] = {&x.a, &x.b, &x.c, &x.d};
  (*blocks[i / n])[i % n] = 1.0;
  return x;
}

Vec flatten(const DiagonalGroup&, const Vec& x) { return x; }

Vec flatten(const ImplementedGroup&, const ComplexMatrix& x) {
  return Vec(x.entries().begin(), x.entries().end());
}

Vec flatten(const EmbeddedCornerGroup&, const CornerElement& x) {
  Vec out;
  out.reserve(4 * x.size());
  for (const Vec* block : {&x.a, &x.b, &x.c, &x.d}) out.insert(out.end(), block->begin(), block->end());
  return out;
}

Vec unflatten(const DiagonalGroup& g, const Vec& coords) {
  if (coords.size() != carrier_dim(g)) throw ShapeMismatch("coordinate count");
  return coords;
}

ComplexMatrix unflatten(const ImplementedGroup& g, const Vec& coords) {
  if (coords.size() != carrier_dim(g)) throw ShapeMismatch("coordinate count");
  ComplexMatrix m(g.dim(), g.dim());
  std::copy(coords.begin(), coords.end(), m.entries().begin());
  return m;
}

CornerElement unflatten(const EmbeddedCornerGroup& g, const Vec& coords) {
  if (coords.size() != carrier_dim(g)) throw ShapeMismatch("coordinate count");
  const std::size_t n = g.inner.size();
  CornerElement x{Vec(n), Vec(n), Vec(n), Vec(n)};
  Vec* blocks[4] = {&x.a, &x.b, &x.c, &x.d};
  for (std::size_t i = 0; i < coords.size(); ++i) (*blocks[i / n])[i % n] = coords[i];
  return x;
}

Vec zero_element(const DiagonalGroup& g) { return Vec(g.size(), Complex{0.0, 0.0}); }

ComplexMatrix zero_element(const ImplementedGroup& g) { return ComplexMatrix(g.dim(), g.dim()); }

CornerElement zero_element(const EmbeddedCornerGroup& g) {
  const std::size_t n = g.inner.size();
  return CornerElement(Vec(n), Vec(n), Vec(n), Vec(n));
}

Vec random_element(const DiagonalGroup& g, Rng& rng) {
  Vec x(g.size());
  for (auto& v : x) v = rng.complex_normal();
  return x;
}

ComplexMatrix random_element(const ImplementedGroup& g, Rng& rng) {
  return random_matrix(g.dim(), g.dim(), rng);
}

CornerElement random_element(const EmbeddedCornerGroup& g, Rng& rng) {
  const std::size_t n = g.inner.size();
  CornerElement x{Vec(n), Vec(n), Vec(n), Vec(n)};
  for (Vec* block : {&x.a, &x.b, &x.c, &x.d})
    for (auto& v : *block) v = rng.complex_normal();
  return x;
}

double max_frequency(const DiagonalGroup& g) { return g.max_abs_exponent(); }
double max_frequency(const ImplementedGroup& g) { return g.frequency_spread(); }
double max_frequency(const EmbeddedCornerGroup& g) { return g.inner.max_abs_exponent(); }

DomainMembership in_domain_sequence(const GeometricSequence& seq, const DiagonalGroup& group,
                                    Complex z) {
  if (!group.is_integer_model())
    throw UnsupportedGroup("domain predicate requires the integer-weight model");
  DomainMembership m;
  if (seq.is_zero()) {
    m.c0 = m.linf = true;
    return m;
  }
  // Per-step log growth of |x_n| and of |alpha_z(x)_n| = |x_n| e^{-n Im z};
  // every intermediate line of the strip interpolates between the two, so the
  // worst tail ratio decides membership for the whole strip.
  const double step_x = seq.log_ratio();
  const double step_image = seq.log_ratio() - z.imag();
  const double worst = std::max(step_x, step_image);
  m.linf = worst <= 0.0;
  m.c0 = worst < 0.0;
  return m;
}

}  // namespace opg
