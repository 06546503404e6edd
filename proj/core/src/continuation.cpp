#include "opg/continuation.hpp"

#include <cmath>
#include <numbers>

namespace opg {

Vec alpha_z_spectral(const DiagonalGroup& g, Complex z, const Vec& x) {
  if (x.size() != g.size()) throw ShapeMismatch("sequence length does not match the group");
  Vec out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    out[k] = x[k] * std::exp(Complex{0.0, 1.0} * g.exponents[k] * z);
  return out;
}

ComplexMatrix alpha_z_spectral(const ImplementedGroup& g, Complex z, const ComplexMatrix& x) {
  if (x.rows() != g.dim() || x.cols() != g.dim())
    throw ShapeMismatch("matrix does not match the group dimension");
  ComplexMatrix left = matrix_power(g.implementer(), Complex{0.0, 1.0} * z);
  ComplexMatrix right = matrix_power(g.implementer(), Complex{0.0, -1.0} * z);
  return left * x * right;
}

CornerElement alpha_z_spectral(const EmbeddedCornerGroup& g, Complex z, const CornerElement& x) {
  if (x.size() != g.inner.size()) throw ShapeMismatch("corner element does not match the group");
  CornerElement out = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Complex m = std::exp(Complex{0.0, 1.0} * g.inner.exponents[k] * z);
    out.b[k] = x.b[k] * m;
    out.c[k] = x.c[k] / m;
  }
  return out;
}

CounterexampleF CounterexampleF::cubic(std::size_t count, std::size_t n_components) {
  return power_schedule(count, n_components, 3);
}

CounterexampleF CounterexampleF::power_schedule(std::size_t count, std::size_t n_components,
                                                int power) {
  CounterexampleF f;
  f.k.resize(count);
  for (std::size_t m = 1; m <= count; ++m) {
    long long v = 1;
    for (int i = 0; i < power; ++i) v *= static_cast<long long>(m);
    f.k[m - 1] = v;
  }
  f.truncation = n_components;
  return f;
}

Complex CounterexampleF::component_at_angle(std::size_t m, double theta) const {
  if (m < 1 || m > k.size()) throw IndexOutOfRange("counterexample component index");
  const double phi = theta - std::numbers::pi / static_cast<double>(m);
  // k_m (e^{i phi} - 1), with cos(phi) - 1 = -2 sin^2(phi/2) for accuracy
  const double km = static_cast<double>(k[m - 1]);
  const double half = 0.5 * phi;
  const double re = -2.0 * km * std::sin(half) * std::sin(half);
  const double im = km * std::sin(phi);
  // exp underflows cleanly to 0 for very negative re
  return std::polar(std::exp(re), im);
}

Complex CounterexampleF::component(std::size_t m, Complex z) const {
  if (m < 1 || m > k.size()) throw IndexOutOfRange("counterexample component index");
  const double km = static_cast<double>(k[m - 1]);
  const Complex w = km * (std::polar(1.0, -std::numbers::pi / static_cast<double>(m)) * z - 1.0);
  return std::polar(std::exp(w.real()), w.imag());
}

double counterexample_norm_gap(const CounterexampleF& f, std::size_t n) {
  if (n < 1 || n > f.k.size()) throw IndexOutOfRange("gap index exceeds the schedule");
  const double theta = std::numbers::pi / static_cast<double>(n);
  const std::size_t top = std::min(f.truncation, f.k.size());
  double gap = 0.0;
  for (std::size_t m = 1; m <= top; ++m)
    gap = std::max(gap, std::abs(f.component_at_angle(m, theta) - f.component_at_angle(m, 0.0)));
  return gap;
}

WeakContinuityReport counterexample_weak_continuity(const CounterexampleF& f,
                                                    const std::vector<double>& a,
                                                    std::size_t n_max) {
  WeakContinuityReport report;
  const std::size_t top = std::min({f.truncation, f.k.size(), a.size()});
  for (std::size_t n = 2; n <= n_max; ++n) {
    const double theta = std::numbers::pi / static_cast<double>(n);
    Complex pairing = 0.0;
    for (std::size_t m = 1; m <= top; ++m)
      pairing += a[m - 1] * (f.component_at_angle(m, theta) - f.component_at_angle(m, 0.0));
    report.n_values.push_back(n);
    report.pairings.push_back(std::abs(pairing));
  }
  report.final_value = report.pairings.empty() ? 0.0 : report.pairings.back();
  return report;
}

std::vector<double> dyadic_weights(std::size_t count) {
  std::vector<double> a(count);
  double w = 0.5;
  for (std::size_t m = 0; m < count; ++m) {
    a[m] = w;
    w *= 0.5;
  }
  return a;
}

}  // namespace opg
