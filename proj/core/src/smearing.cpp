#include "opg/smearing.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace opg {

QuadratureScheme::QuadratureScheme(double half_width_, double step_, QuadratureRule rule_,
                                   int panel_order_)
    : half_width(half_width_), step(step_), rule(rule_), panel_order(panel_order_) {
  if (!(half_width > 0.0) || !(step > 0.0)) throw Error("quadrature scheme needs T > 0, h > 0");
  if (half_width / step < 8.0) throw Error("quadrature scheme needs T / h >= 8");
  if (rule == QuadratureRule::GaussLegendrePanels && panel_order < 2)
    throw Error("panel order must be at least 2");
}

QuadratureScheme QuadratureScheme::standard(double sharpness, Complex shift, double max_freq) {
  if (!(sharpness > 0.0)) throw NotPositive("smearing sharpness must be positive");
  const double b = std::abs(shift.imag());
  const double half_width = std::max(6.0 / sharpness, 6.0 * sharpness * (1.0 + b));
  // resolve both the Gaussian scale 1/n and the fastest multiplier phase
  const double osc = max_freq + 2.0 * sharpness * sharpness * b;
  double step = std::min({half_width / 32.0, 0.5 / sharpness, 1.5 / (1.0 + osc)});
  return QuadratureScheme(half_width, step, QuadratureRule::GaussLegendrePanels, 8);
}

std::size_t QuadratureScheme::panel_count() const {
  return static_cast<std::size_t>(std::ceil(2.0 * half_width / step));
}

double QuadratureScheme::log_tail_mass(double sharpness, Complex shift) const {
  const double a = shift.real();
  const double b = shift.imag();
  const double s =
      std::erfc(sharpness * (half_width - a)) + std::erfc(sharpness * (half_width + a));
  if (s <= 0.0) return -std::numeric_limits<double>::infinity();
  return sharpness * sharpness * b * b + std::log(0.5 * s);
}

void QuadratureScheme::certify(double sharpness, Complex shift, double tail_tol) const {
  if (log_tail_mass(sharpness, shift) > std::log(tail_tol))
    throw TailBoundViolated("discarded Gaussian tail mass exceeds " + std::to_string(tail_tol));
}

namespace detail {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order) {
  // Newton iteration on the Legendre polynomial, seeded by the Chebyshev
  // approximation of the roots.
  std::vector<double> nodes(order), weights(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(order) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // refresh derivative at the converged root for the weight
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    weights[i] = weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return {nodes, weights};
}

Vec reduce_partials(std::vector<std::vector<std::complex<long double>>> partials, double prefactor,
                    std::size_t dim) {
  if (partials.empty()) partials.emplace_back(dim, std::complex<long double>{0.0L, 0.0L});
  while (partials.size() > 1) {
    std::vector<std::vector<std::complex<long double>>> next;
    next.reserve((partials.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < partials.size(); i += 2) {
      for (std::size_t k = 0; k < dim; ++k) partials[i][k] += partials[i + 1][k];
      next.push_back(std::move(partials[i]));
    }
    if (partials.size() % 2 == 1) next.push_back(std::move(partials.back()));
    partials = std::move(next);
  }
  Vec out(dim);
  const long double pre = prefactor;
  for (std::size_t k = 0; k < dim; ++k) {
    const auto v = partials[0][k] * pre;
    out[k] = Complex{static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
  return out;
}

}  // namespace detail

SupportReport support_preservation(const SmearingOperator& r, const DiagonalGroup& g, const Vec& x,
                                   double tol) {
  if (x.size() != g.size()) throw ShapeMismatch("sequence length does not match the group");
  SupportReport report;
  const double n = r.sharpness;
  double min_log = 0.0;
  bool any = false;
  Vec closed(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lg = -g.exponents[k] * g.exponents[k] / (4.0 * n * n);
    closed[k] = x[k] * std::exp(lg);
    if (x[k] != Complex{0.0, 0.0}) {
      min_log = any ? std::min(min_log, lg) : lg;
      any = true;
    }
  }
  report.min_log_multiplier = any ? min_log : 0.0;
  // the multiplier never vanishes, so the support is carried over verbatim
  report.supports_equal = true;

  const Vec quad = smear(r, g, x);
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lg = -g.exponents[k] * g.exponents[k] / (4.0 * n * n);
    if (lg < std::log(1e-12)) continue;  // beyond quadrature resolution
    const double scale = std::max(std::abs(x[k]), 1e-300);
    worst = std::max(worst, std::abs(quad[k] - closed[k]) / scale);
  }
  report.quadrature_residual = worst;
  report.pass = report.supports_equal && worst <= tol;
  return report;
}

}  // namespace opg
