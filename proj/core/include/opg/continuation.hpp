#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "opg/groups.hpp"

namespace opg {

/// Closed horizontal strip between the real axis and R + z (just R when z is
/// real).
struct Strip {
  Complex anchor;

  bool contains(Complex w) const {
    if (anchor.imag() == 0.0) return w.imag() == 0.0;
    const double ratio = w.imag() / anchor.imag();
    return ratio >= 0.0 && ratio <= 1.0;
  }

  /// The point at horizontal position t and fractional height s in [0, 1].
  Complex at(double t, double s) const { return Complex{t + s * anchor.real(), s * anchor.imag()}; }
};

// --- analytic extension via spectral calculus -----------------------------
//
// Every carrier here admits a closed-form regular extension of its orbit
// maps; these evaluate it directly.  Uniqueness of regular extensions makes
// this *the* value of alpha_z.

Vec alpha_z_spectral(const DiagonalGroup& g, Complex z, const Vec& x);
ComplexMatrix alpha_z_spectral(const ImplementedGroup& g, Complex z, const ComplexMatrix& x);
CornerElement alpha_z_spectral(const EmbeddedCornerGroup& g, Complex z, const CornerElement& x);

// --- composition and strip bounds ------------------------------------------

template <class X>
struct CompositionReport {
  X composed;   // alpha_{z1}(alpha_{z2}(x))
  X direct;     // alpha_{z1+z2}(x)
  double residual = 0.0;  // relative to the larger norm
  bool pass = false;
};

/// Checks alpha_{z1} o alpha_{z2} = alpha_{z1+z2} on x.  Throws SideMismatch
/// when z1, z2 straddle the real axis (where only the inclusion holds).
template <class G, class X>
CompositionReport<X> composition_check(const G& g, Complex z1, Complex z2, const X& x,
                                       double tol = 1e-9) {
  if (z1.imag() * z2.imag() < 0.0)
    throw SideMismatch("z1 and z2 must lie on the same side of the real axis");
  CompositionReport<X> report;
  report.composed = alpha_z_spectral(g, z1, alpha_z_spectral(g, z2, x));
  report.direct = alpha_z_spectral(g, z1 + z2, x);
  const double scale = std::max({carrier_norm(g, report.composed), carrier_norm(g, report.direct),
                                 1e-300});
  Vec diff = flatten(g, report.composed);
  Vec other = flatten(g, report.direct);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < diff.size(); ++i) norm2 += std::norm(diff[i] - other[i]);
  report.residual = std::sqrt(norm2) / scale;
  report.pass = report.residual <= tol;
  return report;
}

struct ThreeLinesReport {
  double bound = 0.0;                       // max(||x||, ||alpha_z(x)||)
  std::vector<std::vector<double>> norms;   // norms[i][j] over the lattice
  double max_excess = 0.0;                  // max(norm - bound) over the lattice
  bool pass = false;
};

/// Evaluates ||alpha_w(x)|| on a grid x grid lattice of the strip S(z)
/// (horizontal window [-5, 5]) and checks the maximum-principle bound
/// ||alpha_w(x)|| <= max(||x||, ||alpha_z(x)||) + slack.
template <class G, class X>
ThreeLinesReport three_lines_check(const G& g, Complex z, const X& x, int grid,
                                   double slack = 1e-9) {
  if (grid < 2) throw Error("three_lines_check needs a grid of at least 2");
  Strip strip{z};
  ThreeLinesReport report;
  report.bound = std::max(carrier_norm(g, x), carrier_norm(g, alpha_z_spectral(g, z, x)));
  report.norms.resize(grid, std::vector<double>(grid, 0.0));
  double worst = -1e300;
  for (int i = 0; i < grid; ++i) {
    const double s = static_cast<double>(i) / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double t = -5.0 + 10.0 * static_cast<double>(j) / (grid - 1);
      const double n = carrier_norm(g, alpha_z_spectral(g, strip.at(t, s), x));
      report.norms[i][j] = n;
      worst = std::max(worst, n - report.bound);
    }
  }
  report.max_excess = worst;
  report.pass = worst <= slack;
  return report;
}

// --- the weakly-regular, norm-discontinuous boundary function --------------
//
// F(z) = (exp(k_m (e^{-i pi / m} z - 1)))_m on the closed unit disc.  Each
// component is entire, |F_m| <= 1 on the disc, and the component values at
// the boundary points e^{i pi / n} versus 1 stay far apart in sup norm while
// every pairing against a summable sequence settles down.

struct CounterexampleF {
  std::vector<long long> k;  // nonnegative, strictly increasing
  std::size_t truncation;    // number of components evaluated (N)

  /// k_m = m^3 with `count` entries, truncated evaluation at N components.
  static CounterexampleF cubic(std::size_t count, std::size_t n_components);
  /// k_m = m^p.
  static CounterexampleF power_schedule(std::size_t count, std::size_t n_components, int power);

  /// Component m (1-based) at the boundary point e^{i theta}.  The phase
  /// difference theta - pi/m is formed before any trigonometry so that the
  /// anchor points carry no rounding amplified by k_m.
  Complex component_at_angle(std::size_t m, double theta) const;

  /// Component m at a general point of the closed disc.
  Complex component(std::size_t m, Complex z) const;
};

/// max_{m <= N} |F_m(e^{i pi / n}) - F_m(1)|; at least the m = n gap
/// |1 - exp(k_n (e^{-i pi / n} - 1))|.  Throws IndexOutOfRange for n outside
/// the schedule.
double counterexample_norm_gap(const CounterexampleF& f, std::size_t n);

struct WeakContinuityReport {
  std::vector<std::size_t> n_values;
  std::vector<double> pairings;  // |<a, F(e^{i pi / n}) - F(1)>|
  double final_value = 0.0;
};

/// Pairs F(e^{i pi / n}) - F(1) against the summable sequence a (1-based
/// weights a[m-1]) for n = 2..n_max.
WeakContinuityReport counterexample_weak_continuity(const CounterexampleF& f,
                                                    const std::vector<double>& a,
                                                    std::size_t n_max);

/// The weight sequence a_m = 2^{-m}, m = 1..count.
std::vector<double> dyadic_weights(std::size_t count);

}  // namespace opg
