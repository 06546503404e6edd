#include "opg/suite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opg/continuation.hpp"
#include "opg/graphs.hpp"
#include "opg/modular.hpp"
#include "opg/smearing.hpp"

namespace opg {

namespace {

double vec_dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

double vec_norm(const Vec& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

template <class G, class X>
double rel_residual(const G& g, const X& a, const X& b) {
  const Vec fa = flatten(g, a);
  const Vec fb = flatten(g, b);
  return vec_dist(fa, fb) / std::max({vec_norm(fa), vec_norm(fb), 1e-300});
}

struct Recorder {
  std::vector<CheckRecord>& records;

  void add(std::string name, std::string claim, std::string inputs, double residual, double tol,
           bool pass) {
    records.push_back(
        {std::move(name), std::move(claim), std::move(inputs), residual, tol, pass});
  }

  void bounded(std::string name, std::string claim, std::string inputs, double residual,
               double tol) {
    add(std::move(name), std::move(claim), std::move(inputs), residual, tol, residual <= tol);
  }
};

std::string digest(const SuiteConfig& cfg, const std::string& extra) {
  std::ostringstream out;
  out << "seed=" << cfg.seed;
  if (!extra.empty()) out << ' ' << extra;
  return out.str();
}

ImplementedGroup seeded_group(std::size_t d, Rng& rng, double scale = 1.5) {
  return ImplementedGroup(random_hermitian(d, rng, scale));
}

void matrix_suite(const SuiteConfig& cfg, const Tolerances& tol, Recorder& rec) {
  Rng rng(cfg.seed);
  double worst_recon = 0.0, worst_ortho = 0.0;
  for (std::size_t d : cfg.dims) {
    ComplexMatrix a = random_hermitian(d, rng, 2.0);
    EigenDecomposition eig = eig_hermitian(a);
    ComplexMatrix recon = eig.eigenvectors *
                          ComplexMatrix::diagonal(std::span<const double>(eig.eigenvalues)) *
                          eig.eigenvectors.adjoint();
    worst_recon = std::max(worst_recon, op_norm(recon - a) / std::max(op_norm(a), 1e-300));
    ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
    worst_ortho = std::max(worst_ortho, op_norm(gram - ComplexMatrix::identity(d)));
  }
  rec.bounded("matrix/eig_reconstruction", "V diag(lambda) V* reconstructs the input",
              digest(cfg, "dims<=64"), worst_recon, tol.reconstruction);
  rec.bounded("matrix/eig_orthonormality", "V* V = I", digest(cfg, ""), worst_ortho,
              tol.reconstruction);

  double worst_law = 0.0, worst_unitary = 0.0;
  for (std::size_t d : cfg.dims) {
    if (d > 8) continue;
    ImplementedGroup g = seeded_group(d, rng);
    const PositiveMatrix& p = g.implementer();
    for (int rep = 0; rep < 4; ++rep) {
      const Complex w1{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      const Complex w2{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      ComplexMatrix lhs = matrix_power(p, w1) * matrix_power(p, w2);
      ComplexMatrix rhs = matrix_power(p, w1 + w2);
      worst_law = std::max(worst_law,
                           op_norm(lhs - rhs) / std::max(op_norm(rhs), 1e-300));
      ComplexMatrix u = matrix_power(p, Complex{0.0, rng.uniform(-4.0, 4.0)});
      worst_unitary =
          std::max(worst_unitary, op_norm(u.adjoint() * u - ComplexMatrix::identity(d)));
    }
  }
  rec.bounded("matrix/power_group_law", "P^{w1} P^{w2} = P^{w1+w2} for |w| <= 4",
              digest(cfg, ""), worst_law, 1e-9);
  rec.bounded("matrix/power_imaginary_unitary", "P^{it} is unitary for real t", digest(cfg, ""),
              worst_unitary, 1e-9);
}

void group_suite(const SuiteConfig& cfg, const Tolerances& tol, Recorder& rec) {
  Rng rng(cfg.seed + 1);
  double worst_law = 0.0, worst_iso = 0.0;
  // diagonal, implemented, corner carriers under one loop
  for (std::size_t d : cfg.dims) {
    DiagonalGroup diag = DiagonalGroup::integer_model(std::min<std::size_t>(d + 4, 16));
    ImplementedGroup impl = seeded_group(std::min<std::size_t>(d, 8), rng);
    EmbeddedCornerGroup corner = build_corner(DiagonalGroup::integer_model(8));
    for (int rep = 0; rep < 3; ++rep) {
      const double s = rng.uniform(-10.0, 10.0);
      const double t = rng.uniform(-10.0, 10.0);
      {
        Vec x = random_element(diag, rng);
        worst_law = std::max(worst_law, rel_residual(diag, apply(diag, s, apply(diag, t, x)),
                                                     apply(diag, s + t, x)));
        worst_iso = std::max(worst_iso, std::abs(carrier_norm(diag, apply(diag, t, x)) -
                                                 carrier_norm(diag, x)) /
                                            std::max(carrier_norm(diag, x), 1e-300));
      }
      {
        ComplexMatrix x = random_element(impl, rng);
        worst_law = std::max(worst_law, rel_residual(impl, apply(impl, s, apply(impl, t, x)),
                                                     apply(impl, s + t, x)));
        worst_iso = std::max(worst_iso, std::abs(carrier_norm(impl, apply(impl, t, x)) -
                                                 carrier_norm(impl, x)) /
                                            std::max(carrier_norm(impl, x), 1e-300));
      }
      {
        CornerElement x = random_element(corner, rng);
        worst_law = std::max(worst_law, rel_residual(corner, apply(corner, s, apply(corner, t, x)),
                                                     apply(corner, s + t, x)));
        worst_iso = std::max(worst_iso, std::abs(carrier_norm(corner, apply(corner, t, x)) -
                                                 carrier_norm(corner, x)) /
                                            std::max(carrier_norm(corner, x), 1e-300));
      }
    }
  }
  rec.bounded("groups/law", "alpha_s alpha_t = alpha_{s+t} on every carrier",
              digest(cfg, "s,t in [-10,10]"), worst_law, tol.group_law);
  rec.bounded("groups/isometry", "||alpha_t(x)|| = ||x||", digest(cfg, ""), worst_iso,
              tol.isometry);

  double worst_mult = 0.0, worst_star = 0.0;
  for (std::size_t d : cfg.dims) {
    if (d > 6) continue;
    ImplementedGroup g = seeded_group(d, rng);
    for (int rep = 0; rep < 3; ++rep) {
      const double t = rng.uniform(-5.0, 5.0);
      ComplexMatrix x = random_element(g, rng);
      ComplexMatrix y = random_element(g, rng);
      worst_mult = std::max(
          worst_mult, rel_residual(g, apply(g, t, x * y), apply(g, t, x) * apply(g, t, y)));
      worst_star =
          std::max(worst_star, rel_residual(g, apply(g, t, x.adjoint()), apply(g, t, x).adjoint()));
    }
  }
  rec.bounded("groups/automorphism_multiplicative", "alpha_t(xy) = alpha_t(x) alpha_t(y)",
              digest(cfg, "implemented"), worst_mult, tol.algebra);
  rec.bounded("groups/automorphism_star", "alpha_t(x*) = alpha_t(x)*", digest(cfg, "implemented"),
              worst_star, tol.group_law);

  // the multiplier group genuinely fails multiplicativity
  {
    DiagonalGroup diag = DiagonalGroup::integer_model(4);
    Vec x(4, Complex{0.0, 0.0}), y(4, Complex{0.0, 0.0});
    x[1] = 1.0;
    y[1] = 1.0;
    Vec xy(4, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < 4; ++k) xy[k] = x[k] * y[k];
    Vec lhs = apply(diag, 1.0, xy);
    Vec rhs = apply(diag, 1.0, x);
    for (std::size_t k = 0; k < 4; ++k) rhs[k] *= apply(diag, 1.0, y)[k];
    const double gap = vec_dist(lhs, rhs);
    rec.add("groups/diagonal_not_multiplicative",
            "a weighted multiplier group is not an automorphism group: "
            "||alpha_t(xy) - alpha_t(x) alpha_t(y)|| stays above 0.1",
            digest(cfg, "lambda_k=k t=1"), gap, 0.1, gap > 0.1);
  }
}

void continuation_suite(const SuiteConfig& cfg, const Tolerances& tol, Recorder& rec) {
  Rng rng(cfg.seed + 2);
  double worst_star = 0.0, worst_mult = 0.0, worst_shift = 0.0, worst_comp = 0.0;
  for (std::size_t d : cfg.dims) {
    if (d > 6) continue;
    ImplementedGroup g = seeded_group(d, rng, 1.0);
    for (Complex z : cfg.z_values) {
      if (std::abs(z.imag()) > 2.0) continue;
      ComplexMatrix x = random_element(g, rng);
      ComplexMatrix y = random_element(g, rng);
      const double nx = std::max(op_norm(x), 1e-300);
      const double ny = std::max(op_norm(y), 1e-300);
      x *= Complex{1.0 / nx, 0.0};
      y *= Complex{1.0 / ny, 0.0};
      worst_star = std::max(worst_star, rel_residual(g, alpha_z_spectral(g, std::conj(z), x.adjoint()),
                                                     alpha_z_spectral(g, z, x).adjoint()));
      worst_mult = std::max(worst_mult,
                            rel_residual(g, alpha_z_spectral(g, z, x * y),
                                         alpha_z_spectral(g, z, x) * alpha_z_spectral(g, z, y)));
      const double t = rng.uniform(-3.0, 3.0);
      worst_shift = std::max(worst_shift, rel_residual(g, apply(g, t, alpha_z_spectral(g, z, x)),
                                                       alpha_z_spectral(g, z + t, x)));
      auto comp = composition_check(g, 0.5 * z, 0.5 * z, x);
      worst_comp = std::max(worst_comp, comp.residual);
    }
  }
  rec.bounded("continuation/star_relation", "alpha_{conj(z)}(x*) = alpha_z(x)*",
              digest(cfg, "|Im z|<=2"), worst_star, tol.group_law);
  rec.bounded("continuation/multiplicative", "alpha_z(xy) = alpha_z(x) alpha_z(y)",
              digest(cfg, "unit-ball x,y"), worst_mult, tol.algebra);
  rec.bounded("continuation/real_shift", "alpha_t alpha_z = alpha_{z+t}", digest(cfg, ""),
              worst_shift, tol.group_law);
  rec.bounded("continuation/composition", "alpha_{z/2} alpha_{z/2} = alpha_z (same side)",
              digest(cfg, ""), worst_comp, tol.algebra);

  double worst_excess = 0.0;
  {
    DiagonalGroup diag = DiagonalGroup::integer_model(6);
    ImplementedGroup impl = seeded_group(4, rng, 1.0);
    for (Complex z : cfg.z_values) {
      if (z.imag() == 0.0) continue;
      Vec xv = random_element(diag, rng);
      worst_excess = std::max(worst_excess, three_lines_check(diag, z, xv, 11).max_excess);
      ComplexMatrix xm = random_element(impl, rng);
      worst_excess = std::max(worst_excess, three_lines_check(impl, z, xm, 11).max_excess);
    }
  }
  rec.add("continuation/three_lines",
          "||alpha_w(x)|| <= max(||x||, ||alpha_z(x)||) across the strip lattice",
          digest(cfg, "11x11 grid"), std::max(worst_excess, 0.0), tol.three_lines_slack,
          worst_excess <= tol.three_lines_slack);

  // boundary function: sup-norm gap stays at 1 while summable pairings decay
  {
    CounterexampleF f = CounterexampleF::cubic(64, 64);
    double min_gap = 1e300;
    for (std::size_t n = 10; n <= 40; ++n)
      min_gap = std::min(min_gap, counterexample_norm_gap(f, n));
    rec.add("continuation/counterexample_norm_gap",
            "sup-norm gap |F(e^{i pi/n}) - F(1)| stays above 0.99 for n = 10..40",
            "k_n=n^3 N=64", 1.0 - min_gap, 0.01, min_gap >= 0.99);

    auto weak = counterexample_weak_continuity(f, dyadic_weights(64), 40);
    const double at10 = weak.pairings[10 - 2];
    const double at40 = weak.final_value;
    rec.add("continuation/counterexample_weak_decay",
            "pairing <a, F(e^{i pi/n}) - F(1)> decays (O(1/n) scale) while the norm gap stays 1",
            "a_m=2^-m k_n=n^3 N=64", at40, 0.01, at40 <= 0.01 && at40 < at10);
  }
}

void smearing_suite(const SuiteConfig& cfg, const Tolerances& tol, Recorder& rec) {
  Rng rng(cfg.seed + 3);
  // quadrature against the diagonal closed form
  double worst_closed = 0.0;
  for (double n : cfg.n_values) {
    std::vector<double> lambdas;
    for (int l = -6; l <= 6; ++l) lambdas.push_back(static_cast<double>(l));
    DiagonalGroup g{lambdas, SequenceModel::Linf};
    SmearingOperator r = SmearingOperator::standard(n, g);
    Vec x(lambdas.size(), Complex{1.0, 0.0});
    Vec smeared = smear(r, g, x);
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      const double closed = std::exp(-lambdas[k] * lambdas[k] / (4.0 * n * n));
      worst_closed = std::max(worst_closed, std::abs(smeared[k] - Complex{closed, 0.0}));
    }
  }
  rec.bounded("smearing/closed_form",
              "quadrature R_n matches the multiplier exp(-lambda^2/(4 n^2)) on diagonal carriers",
              digest(cfg, "|lambda|<=6"), worst_closed, tol.cross_path);

  // contraction and the two-path contour identity across carriers
  double worst_contract = 0.0, worst_shifted = 0.0;
  DiagonalGroup diag = DiagonalGroup::integer_model(7);
  ImplementedGroup impl = seeded_group(4, rng, 1.0);
  EmbeddedCornerGroup corner = build_corner(DiagonalGroup::integer_model(6));
  for (double n : cfg.n_values) {
    for (Complex z : cfg.z_values) {
      if (n * std::abs(z.imag()) > 4.0) continue;  // extended-precision error budget
      SmearingOperator rd = SmearingOperator::standard(n, diag, z);
      SmearingOperator ri = SmearingOperator::standard(n, impl, z);
      SmearingOperator rc = SmearingOperator::standard(n, corner, z);
      Vec xv = random_element(diag, rng);
      ComplexMatrix xm = random_element(impl, rng);
      CornerElement xc = random_element(corner, rng);
      worst_contract = std::max({worst_contract,
                                 carrier_norm(diag, smear(rd, diag, xv)) - carrier_norm(diag, xv),
                                 carrier_norm(impl, smear(ri, impl, xm)) - carrier_norm(impl, xm),
                                 carrier_norm(corner, smear(rc, corner, xc)) -
                                     carrier_norm(corner, xc)});
      worst_shifted = std::max(
          worst_shifted, rel_residual(diag, smear_shifted(rd, diag, z, xv),
                                      alpha_z_spectral(diag, z, smear(rd, diag, xv))));
      worst_shifted = std::max(
          worst_shifted, rel_residual(impl, smear_shifted(ri, impl, z, xm),
                                      alpha_z_spectral(impl, z, smear(ri, impl, xm))));
      worst_shifted = std::max(
          worst_shifted, rel_residual(corner, smear_shifted(rc, corner, z, xc),
                                      alpha_z_spectral(corner, z, smear(rc, corner, xc))));
    }
  }
  rec.bounded("smearing/contractivity", "||R_n(x)|| <= ||x|| (average of isometries)",
              digest(cfg, "all carriers"), std::max(worst_contract, 0.0), 1e-9);
  rec.bounded("smearing/contour_shift",
              "contour-shifted quadrature equals the spectral extension of R_n(x)",
              digest(cfg, "n |Im z| <= 4"), worst_shifted, tol.cross_path);

  // R_n -> id with the quantitative multiplier bound
  {
    double worst_limit = 0.0;
    bool decreasing = true;
    double prev = 1e300;
    Vec x = random_element(diag, rng);
    const double max_l2 = 36.0;  // lambda_k = k <= 6
    for (double n : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      SmearingOperator r = SmearingOperator::standard(n, diag);
      Vec s = smear(r, diag, x);
      const double dist = vec_dist(s, x);
      const double bound = max_l2 / (4.0 * n * n) * carrier_norm(diag, x) * (1.0 + 1e-6) *
                           std::sqrt(static_cast<double>(x.size()));
      worst_limit = std::max(worst_limit, dist - bound);
      decreasing = decreasing && dist <= prev + 1e-12;
      prev = dist;
    }
    rec.add("smearing/limit_to_identity",
            "||R_n(x) - x|| <= max(lambda^2)/(4 n^2) ||x|| and decays in n",
            digest(cfg, "n in {1,2,4,8,16}"), std::max(worst_limit, 0.0), 1e-9,
            worst_limit <= 1e-9 && decreasing);
  }
}

void graph_suite(const SuiteConfig& cfg, const Tolerances& tol, Recorder& rec) {
  Rng rng(cfg.seed + 4);
  const Complex minus_i{0.0, -1.0};

  double worst_product = 0.0, worst_anti = 0.0;
  for (std::size_t d : cfg.dims) {
    if (d > 6) continue;
    ImplementedGroup g = seeded_group(d, rng, 1.0);
    for (int rep = 0; rep < 3; ++rep) {
      auto g1 = graph_element(g, minus_i, random_element(g, rng));
      auto g2 = graph_element(g, minus_i, random_element(g, rng));
      auto prod = graph_product(g, minus_i, g1, g2);
      worst_product =
          std::max(worst_product, graph_membership_residual(g, minus_i, prod.first, prod.second));
      // the involution reverses products
      auto lhs = natural_involution(g, minus_i, prod);
      auto rhs = graph_product(g, minus_i, natural_involution(g, minus_i, g2),
                               natural_involution(g, minus_i, g1));
      worst_anti = std::max(worst_anti, rel_residual(g, lhs.first, rhs.first));
      worst_anti = std::max(worst_anti, rel_residual(g, lhs.second, rhs.second));
    }
  }
  rec.bounded("graphs/product_closure", "graphs of alpha_z are closed under products",
              digest(cfg, "z=-i"), worst_product, tol.cross_path);
  rec.bounded("graphs/involution_antihomomorphism",
              "(g1 g2)^natural = g2^natural g1^natural", digest(cfg, ""), worst_anti, tol.algebra);

  // spectral subspace closure under unit composition
  {
    std::vector<double> lambda = {0.0, std::log(2.0), std::log(4.0), std::log(7.0)};
    ImplementedGroup g(ComplexMatrix::diagonal(std::span<const double>(lambda)));
    SpectralSubspace h = hinfty_basis(g);
    bool closed = true;
    auto included = [&](std::size_t j, std::size_t k) {
      for (const auto& [a, b] : h.units)
        if (a == j && b == k) return true;
      return false;
    };
    for (const auto& [j, k] : h.units)
      for (const auto& [k2, l] : h.units)
        if (k2 == k && !included(j, l)) closed = false;
    rec.add("graphs/hinfty_closed_under_products",
            "e_jk e_kl = e_jl keeps the weight ratio below one",
            "p=(1,2,4,7)", h.max_limsup_deviation, 1e-10,
            closed && h.max_limsup_deviation <= 1e-10);
  }

  // fixed-point part and the span identity behind A + A*
  {
    std::vector<double> lambda = {0.0, 0.0, 1.0};
    ImplementedGroup g(ComplexMatrix::diagonal(std::span<const double>(lambda)));
    auto fixed = selfadjoint_part(g);
    std::vector<ComplexMatrix> lhs, rhs;
    const std::size_t d = g.dim();
    auto pair_row = [&](const ComplexMatrix& x, const ComplexMatrix& y) {
      ComplexMatrix row(1, 2 * d * d);
      const Vec fx = flatten(g, x), fy = flatten(g, y);
      for (std::size_t i = 0; i < d * d; ++i) {
        row(0, i) = fx[i];
        row(0, d * d + i) = fy[i];
      }
      return row;
    };
    for (std::size_t u = 0; u < d * d; ++u) {
      const ComplexMatrix e = carrier_basis(g, u);
      lhs.push_back(pair_row(e, alpha_z_spectral(g, minus_i, e)));
      lhs.push_back(pair_row(e, alpha_z_spectral(g, Complex{0.0, 1.0}, e)));
      rhs.push_back(pair_row(e, e));
      const ComplexMatrix moved = e - apply(g, 1.0, e);
      const ComplexMatrix moved2 = e - apply(g, 0.37, e);
      rhs.push_back(pair_row(moved, zero_element(g)));
      rhs.push_back(pair_row(moved2, zero_element(g)));
    }
    const double span_res = subspace_residual(lhs, rhs);
    rec.add("graphs/selfadjoint_span",
            "span(A + A*) = {(x, y) : x - y in span(v - alpha_t(v))}",
            "H=diag(0,0,1)", span_res, tol.subspace, span_res <= tol.subspace);
    rec.add("graphs/selfadjoint_part_dim",
            "fixed-point algebra = commutant of the implementer",
            "H=diag(0,0,1)", std::abs(static_cast<double>(fixed.size()) - 5.0), 0.0,
            fixed.size() == 5);
  }

  double worst_dual = 0.0;
  for (Complex z : cfg.z_values) {
    if (std::abs(z.imag()) > 2.0) continue;
    DiagonalGroup diag = DiagonalGroup::integer_model(4);
    worst_dual = std::max(worst_dual, dual_generator_check(diag, z).residual);
    ImplementedGroup g = seeded_group(3, rng, 1.0);
    worst_dual = std::max(worst_dual, dual_generator_check(g, z).residual);
  }
  rec.bounded("graphs/dual_generator",
              "annihilator graph of j G(alpha_z) equals the dual group's spectral graph",
              digest(cfg, "|Im z|<=2"), worst_dual, tol.subspace);

  // Kaplansky truncation net in the corner model
  {
    EmbeddedCornerGroup corner = build_corner(DiagonalGroup::integer_model(16));
    double worst_inflation = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
      CornerElement x = random_element(corner, rng);
      const double gn = std::max(carrier_norm(corner, x),
                                 carrier_norm(corner, alpha_z_spectral(corner, minus_i, x)));
      for (Vec* block : {&x.a, &x.b, &x.c, &x.d})
        for (auto& v : *block) v /= gn;
      auto report = kaplansky_truncation(corner, x, {2, 4, 8, 12, 16});
      for (double n : report.graph_norms) worst_inflation = std::max(worst_inflation, n - 1.0);
      if (!report.pass) worst_inflation = std::max(worst_inflation, 1.0);
    }
    rec.bounded("graphs/kaplansky_truncation",
                "truncations of unit graph-ball corner elements stay in the ball",
                digest(cfg, "N=16"), std::max(worst_inflation, 0.0), 1e-12);
  }

  // generator intertwiners intertwine the whole group
  {
    double worst_tensor = 0.0;
    ImplementedGroup a = seeded_group(3, rng, 1.0);
    ImplementedGroup b = seeded_group(3, rng, 1.0);
    for (const auto& pair :
         {std::pair<const ImplementedGroup&, const ImplementedGroup&>{a, a},
          std::pair<const ImplementedGroup&, const ImplementedGroup&>{a, b}}) {
      auto report =
          tensor_uniqueness_check(pair.first, pair.second, 8, {0.3, 1.7, -2.5}, cfg.seed);
      worst_tensor = std::max(worst_tensor, report.max_residual);
    }
    rec.bounded("graphs/generator_determines_group",
                "theta Ad(P_A) = Ad(P_B) theta forces theta alpha_t = beta_t theta",
                digest(cfg, "d=3"), worst_tensor, tol.subspace);
  }

  // the domain gap between the c0 and linf models
  {
    auto seq = GeometricSequence::with_log_ratio(Complex{1.0, 0.0}, -1.0, 0);
    EmbeddedCornerGroup corner = build_corner(DiagonalGroup::integer_model(8));
    auto report = graph_intersection_check(corner, seq, minus_i);
    rec.add("graphs/domain_gap",
            "x_n = e^{-n} lies in the linf-model domain of alpha_{-i} but not the c0-model domain",
            "r=e^-1", report.strict_gap && report.consistent ? 0.0 : 1.0, 0.0,
            report.strict_gap && report.consistent && !report.seq_in_c0_domain &&
                report.seq_in_linf_domain);
  }
}

void modular_suite(const SuiteConfig& cfg, const Tolerances& tol, Recorder& rec) {
  Rng rng(cfg.seed + 5);

  double worst_s2 = 0.0, worst_invariance = 0.0, worst_spectrum = 0.0;
  bool kms_ok = true;
  for (std::size_t d : cfg.dims) {
    if (d > 6) continue;
    FaithfulState state(random_density(d, rng));
    ModularData md = build_modular(state);
    worst_s2 = std::max(worst_s2, md.construction_residual());
    for (int rep = 0; rep < 2; ++rep) {
      ComplexMatrix xi = random_matrix(d, d, rng);
      worst_s2 = std::max(worst_s2, (md.tomita(md.tomita(xi)) - xi).frobenius_norm() /
                                        std::max(xi.frobenius_norm(), 1e-300));
      ComplexMatrix x = random_matrix(d, d, rng);
      const double t = rng.uniform(-3.0, 3.0);
      const Complex before = (state.density().matrix() * x).trace();
      const Complex after = (state.density().matrix() * apply(md.sigma(), t, x)).trace();
      worst_invariance = std::max(worst_invariance, std::abs(before - after) /
                                                        std::max(std::abs(before), 1e-300));

      ComplexMatrix a = random_matrix(d, d, rng);
      const ComplexMatrix good = md.delta_pow(Complex{1.0, 0.0}, a);
      ComplexMatrix bad = good;
      bad(0, 0) += 0.1 * op_norm(a);
      kms_ok = kms_ok && verify_kms(md, a, good) && !verify_kms(md, a, bad);
    }
    // Delta's spectrum is the ratio set {rho_j / rho_k}
    EigenDecomposition eig = eig_hermitian(md.delta_superop(), 1e-8);
    std::vector<double> ratios;
    for (double a : state.density().eigenvalues())
      for (double b : state.density().eigenvalues()) ratios.push_back(a / b);
    std::sort(ratios.begin(), ratios.end());
    for (std::size_t i = 0; i < ratios.size(); ++i)
      worst_spectrum = std::max(worst_spectrum,
                                std::abs(ratios[i] - eig.eigenvalues[i]) / ratios.back());
  }
  rec.bounded("modular/tomita_involution", "S = J Delta^{1/2} squares to the identity",
              digest(cfg, "d<=6"), worst_s2, tol.subspace);
  rec.bounded("modular/state_invariance", "trace(rho sigma_t(x)) = trace(rho x)",
              digest(cfg, ""), worst_invariance, tol.group_law);
  rec.add("modular/kms_characterisation",
          "trace(rho a x) = trace(rho x b) for all x iff b = rho a rho^{-1}",
          digest(cfg, "positive and perturbed"), kms_ok ? 0.0 : 1.0, 0.0, kms_ok);
  rec.bounded("modular/delta_spectrum", "spec(Delta) = {rho_j / rho_k}", digest(cfg, ""),
              worst_spectrum, tol.subspace);

  // seeded Markov inclusions
  {
    double worst = 0.0;
    int setups = 0;
    for (std::size_t d : {2, 3, 4}) {
      for (int rep = 0; rep < 7 && setups < 20; ++rep, ++setups) {
        // random block structure summing to d
        std::vector<std::size_t> blocks;
        std::size_t left = d;
        while (left > 0) {
          std::size_t b = 1 + rng.index(left);
          blocks.push_back(b);
          left -= b;
        }
        // per-block spectra in [0.3, 1] keep the global condition number
        // small enough for the double-precision product identities
        ComplexMatrix rho(d, d);
        std::size_t off = 0;
        double trace = 0.0;
        for (std::size_t b : blocks) {
          std::vector<double> eigs(b);
          for (auto& e : eigs) {
            e = 0.3 + 0.7 * rng.uniform();
            trace += e;
          }
          EigenDecomposition basis = eig_hermitian(random_hermitian(b, rng));
          ComplexMatrix blockrho = basis.eigenvectors *
                                   ComplexMatrix::diagonal(std::span<const double>(eigs)) *
                                   basis.eigenvectors.adjoint();
          for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < b; ++j) rho(off + i, off + j) = blockrho(i, j);
          off += b;
        }
        rho *= Complex{1.0 / trace, 0.0};
        FaithfulState ambient(rho, 1e-9, 1e-6);
        MarkovSetup ms = build_markov(ambient, blocks);
        worst = std::max(worst, ms.isometry_residual());
        for (double t : {0.7, -0.7, 2.3, -2.3})
          worst = std::max(worst, verify_bcm_commutation(ms, t).residual);
        for (Complex z : {Complex{0.0, -0.5}, Complex{0.0, -1.0}, Complex{1.0, 1.0}})
          worst = std::max(worst, verify_bcm_closure(ms, z).residual);
        worst = std::max(worst, verify_j_intertwine(ms).residual);
      }
    }
    rec.bounded("modular/markov_intertwiners",
                "T Delta_N^z = Delta_M^z T, Delta_M^{-t} T Delta_N^t = T, J_phi T J_rho = T",
                digest(cfg, "20 seeded block setups d in {2,3,4}"), worst, tol.markov);
  }
}

}  // namespace

std::vector<CheckRecord> run_suite(const SuiteConfig& config) {
  config.validate();
  const Tolerances tol = config.tolerances();
  std::vector<CheckRecord> records;
  Recorder rec{records};
  matrix_suite(config, tol, rec);
  group_suite(config, tol, rec);
  continuation_suite(config, tol, rec);
  smearing_suite(config, tol, rec);
  graph_suite(config, tol, rec);
  modular_suite(config, tol, rec);
  return records;
}

}  // namespace opg
