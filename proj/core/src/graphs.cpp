#include "opg/graphs.hpp"

#include <algorithm>
#include <cmath>

namespace opg {

ComplexMatrix carrier_multiply(const ImplementedGroup&, const ComplexMatrix& x,
                               const ComplexMatrix& y) {
  return x * y;
}

CornerElement carrier_multiply(const EmbeddedCornerGroup&, const CornerElement& x,
                               const CornerElement& y) {
  if (x.size() != y.size()) throw ShapeMismatch("corner element sizes differ");
  const std::size_t n = x.size();
  CornerElement out{Vec(n), Vec(n), Vec(n), Vec(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.a[k] = x.a[k] * y.a[k] + x.b[k] * y.c[k];
    out.b[k] = x.a[k] * y.b[k] + x.b[k] * y.d[k];
    out.c[k] = x.c[k] * y.a[k] + x.d[k] * y.c[k];
    out.d[k] = x.c[k] * y.b[k] + x.d[k] * y.d[k];
  }
  return out;
}

ComplexMatrix carrier_adjoint(const ImplementedGroup&, const ComplexMatrix& x) {
  return x.adjoint();
}

CornerElement carrier_adjoint(const EmbeddedCornerGroup&, const CornerElement& x) {
  const std::size_t n = x.size();
  CornerElement out{Vec(n), Vec(n), Vec(n), Vec(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.a[k] = std::conj(x.a[k]);
    out.b[k] = std::conj(x.c[k]);
    out.c[k] = std::conj(x.b[k]);
    out.d[k] = std::conj(x.d[k]);
  }
  return out;
}

ComplexMatrix carrier_unit(const ImplementedGroup& g) { return ComplexMatrix::identity(g.dim()); }

CornerElement carrier_unit(const EmbeddedCornerGroup& g) {
  const std::size_t n = g.inner.size();
  CornerElement out{Vec(n, Complex{1.0, 0.0}), Vec(n), Vec(n), Vec(n, Complex{1.0, 0.0})};
  return out;
}

GraphElement<Vec> graph_product(const DiagonalGroup&, Complex, const GraphElement<Vec>&,
                                const GraphElement<Vec>&, double) {
  throw IsometryOnlyCarrier(
      "diagonal multiplier groups are isometry groups, not automorphism groups; "
      "their graphs carry no product");
}

std::vector<ComplexMatrix> selfadjoint_part(const ImplementedGroup& g, double tol) {
  const auto& logs = g.implementer().log_eigenvalues();
  const ComplexMatrix& v = g.implementer().eigenvectors();
  const std::size_t d = logs.size();
  double scale = 1.0;
  for (double l : logs) scale = std::max(scale, std::abs(l));

  std::vector<ComplexMatrix> basis;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      if (std::abs(logs[j] - logs[k]) > 1e-10 * scale) continue;
      // unit of the eigenvalue block, transported to the standard basis
      ComplexMatrix x(d, d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) x(r, c) = v(r, j) * std::conj(v(c, k));
      basis.push_back(std::move(x));
    }
  }
  const Complex minus_i{0.0, -1.0};
  for (const auto& x : basis) {
    GraphElement<ComplexMatrix> el = graph_element_checked(g, minus_i, x, x, tol);
    natural_involution(g, minus_i, el, tol);
  }
  return basis;
}

SpectralSubspace hinfty_basis(const ImplementedGroup& g) {
  const ComplexMatrix& h = g.generator();
  const std::size_t d = h.rows();
  double scale = std::max(h.max_abs_entry(), 1.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j && std::abs(h(i, j)) > 1e-12 * scale)
        throw NotDiagonal("the implementer must be diagonal in the standard basis");

  std::vector<double> lambda(d);
  for (std::size_t i = 0; i < d; ++i) lambda[i] = h(i, i).real();

  SpectralSubspace out;
  out.dim = d;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      const double log_ratio = lambda[k] - lambda[j];  // log(p_k / p_j)
      const double ratio = std::exp(log_ratio);
      // growth along the positive imaginary axis, in log space
      double deviation = 0.0;
      for (int n = 1; n <= 12; ++n) {
        const double root = std::exp(log_ratio * n / n);  // ||alpha_{in}(e_jk)||^{1/n}
        deviation = std::max(deviation, std::abs(root - ratio));
      }
      if (ratio <= 1.0 + 1e-12) {
        out.units.emplace_back(j, k);
        out.ratios.push_back(ratio);
        out.max_limsup_deviation = std::max(out.max_limsup_deviation, deviation);
      }
    }
  }
  return out;
}

namespace {

CornerElement truncate_corner(const CornerElement& x, std::size_t cutoff) {
  CornerElement out = x;
  for (Vec* block : {&out.a, &out.b, &out.c, &out.d})
    for (std::size_t k = cutoff; k < block->size(); ++k) (*block)[k] = {0.0, 0.0};
  return out;
}

double corner_entry_distance(const CornerElement& x, const CornerElement& y) {
  double m = 0.0;
  const Vec* xs[4] = {&x.a, &x.b, &x.c, &x.d};
  const Vec* ys[4] = {&y.a, &y.b, &y.c, &y.d};
  for (int b = 0; b < 4; ++b)
    for (std::size_t k = 0; k < xs[b]->size(); ++k)
      m = std::max(m, std::abs((*xs[b])[k] - (*ys[b])[k]));
  return m;
}

}  // namespace

KaplanskyReport kaplansky_truncation(const EmbeddedCornerGroup& g, const CornerElement& x,
                                     const std::vector<std::size_t>& cutoffs) {
  const Complex minus_i{0.0, -1.0};
  auto graph_norm = [&](const CornerElement& e) {
    return std::max(carrier_norm(g, e), carrier_norm(g, alpha_z_spectral(g, minus_i, e)));
  };
  if (graph_norm(x) > 1.0 + 1e-12)
    throw NotInUnitBall("element exceeds the unit graph ball");

  KaplanskyReport report;
  report.cutoffs = cutoffs;
  bool ok = true;
  for (std::size_t cutoff : cutoffs) {
    const CornerElement xk = truncate_corner(x, cutoff);
    const double gn = graph_norm(xk);
    report.graph_norms.push_back(gn);
    report.entry_distance.push_back(corner_entry_distance(x, xk));
    ok = ok && gn <= 1.0 + 1e-12;
  }
  for (std::size_t i = 1; i < report.entry_distance.size(); ++i)
    ok = ok && report.entry_distance[i] <= report.entry_distance[i - 1] + 1e-15;
  report.pass = ok;
  return report;
}

namespace {

// Annihilator of the rows of m under the bilinear pairing <w, v> = sum w_i v_i,
// i.e. the plain right kernel.
std::vector<Vec> bilinear_annihilator(const std::vector<Vec>& rows, std::size_t width) {
  ComplexMatrix m(rows.size(), width);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < width; ++c) m(r, c) = rows[r][c];
  ComplexMatrix gram = m.adjoint() * m;
  EigenDecomposition eig = eig_hermitian(gram, 1e-8);
  const double top = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.back(), 0.0);
  std::vector<Vec> kernel;
  for (std::size_t j = 0; j < eig.eigenvalues.size(); ++j) {
    // exact-kernel eigenvalues surface as O(eps * top); genuine ones are O(1)
    if (eig.eigenvalues[j] > 1e-10 * std::max(top, 1.0)) continue;
    Vec v(width);
    for (std::size_t i = 0; i < width; ++i) v[i] = eig.eigenvectors(i, j);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

ComplexMatrix as_row(const Vec& v) {
  ComplexMatrix row(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) row(0, i) = v[i];
  return row;
}

template <class G, class DualAlpha>
DualGeneratorReport dual_generator_impl(const G& g, Complex z, DualAlpha&& dual_alpha,
                                        double tol) {
  const std::size_t dim = carrier_dim(g);
  if (dim > 16) throw Error("dual generator check is limited to carrier dimension 16");
  std::vector<Vec> j_graph_rows;
  std::vector<ComplexMatrix> spectral_rows;
  for (std::size_t i = 0; i < dim; ++i) {
    const auto e = carrier_basis(g, i);
    const Vec fe = flatten(g, e);
    const Vec fz = flatten(g, alpha_z_spectral(g, z, e));
    Vec jrow(2 * dim);
    for (std::size_t c = 0; c < dim; ++c) {
      jrow[c] = -fz[c];
      jrow[dim + c] = fe[c];
    }
    j_graph_rows.push_back(std::move(jrow));

    const Vec dual_image = flatten(g, dual_alpha(e));
    Vec srow(2 * dim);
    for (std::size_t c = 0; c < dim; ++c) {
      srow[c] = fe[c];
      srow[dim + c] = dual_image[c];
    }
    spectral_rows.push_back(as_row(srow).entries().empty() ? ComplexMatrix(1, 2 * dim)
                                                           : as_row(srow));
  }
  std::vector<ComplexMatrix> annihilator_rows;
  for (auto& v : bilinear_annihilator(j_graph_rows, 2 * dim))
    annihilator_rows.push_back(as_row(v));

  DualGeneratorReport report;
  report.graph_dim = dim;
  report.residual = subspace_residual(annihilator_rows, spectral_rows);
  report.pass = report.residual <= tol;
  return report;
}

}  // namespace

DualGeneratorReport dual_generator_check(const DiagonalGroup& g, Complex z, double tol) {
  // sum pairing: the adjoint group carries the same multipliers
  return dual_generator_impl(
      g, z, [&](const Vec& mu) { return alpha_z_spectral(g, z, mu); }, tol);
}

DualGeneratorReport dual_generator_check(const ImplementedGroup& g, Complex z, double tol) {
  // Trace pairing tr(mu x): in row-major coordinates the adjoint group
  // conjugates by the transposed powers, (P^{iz})^T mu (P^{-iz})^T.
  const ComplexMatrix left = matrix_power(g.implementer(), Complex{0.0, 1.0} * z).transpose();
  const ComplexMatrix right = matrix_power(g.implementer(), Complex{0.0, -1.0} * z).transpose();
  return dual_generator_impl(
      g, z, [&](const ComplexMatrix& mu) { return left * mu * right; }, tol);
}

GraphIntersectionReport graph_intersection_check(const EmbeddedCornerGroup& g,
                                                 const GeometricSequence& seq, Complex z) {
  if (z != Complex{0.0, -1.0}) throw WrongExponent("the domain gap demo lives at z = -i");
  const DiagonalGroup& inner = g.inner;
  if (!inner.is_integer_model())
    throw UnsupportedGroup("domain predicate requires the integer-weight model");

  const DomainMembership dom = in_domain_sequence(seq, inner, z);
  GraphIntersectionReport report;
  report.seq_in_c0_domain = dom.c0;
  report.seq_in_linf_domain = dom.linf;
  if (seq.is_zero()) {
    report.image_in_c0 = report.image_in_linf = true;
  } else {
    const double image_step = seq.log_ratio() - z.imag();
    report.image_in_c0 = image_step < 0.0;
    report.image_in_linf = image_step <= 0.0;
  }
  const bool seq_in_c0_space = seq.is_zero() || seq.log_ratio() < 0.0;
  report.consistent =
      report.seq_in_c0_domain == (report.seq_in_linf_domain && report.image_in_c0 && seq_in_c0_space);
  report.strict_gap = report.seq_in_linf_domain && !report.seq_in_c0_domain;
  return report;
}

TensorUniquenessReport tensor_uniqueness_check(const ImplementedGroup& ga,
                                               const ImplementedGroup& gb, std::size_t samples,
                                               const std::vector<double>& t_values,
                                               std::uint64_t seed, double tol) {
  const std::size_t d = ga.dim();
  if (gb.dim() != d) throw ShapeMismatch("group carriers must share one dimension");
  if (d > 4) throw Error("intertwiner search is limited to d <= 4");
  const std::size_t dim = d * d;

  // Superoperators of x -> P x P^{-1} are Hermitian positive for Hermitian P
  // (row-major vec: P kron (P^{-1})^T), so an eigenbasis diagonalises each
  // side and intertwiners are spanned by matched-eigenvalue outer products.
  auto super_of = [&](const ImplementedGroup& g) {
    ComplexMatrix p = g.implementer().matrix();
    ComplexMatrix p_inv_t = matrix_power(g.implementer(), Complex{-1.0, 0.0}).transpose();
    ComplexMatrix s(dim, dim);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l)
            s(i * d + k, j * d + l) = p(i, j) * p_inv_t(k, l);
    return eig_hermitian(s, 1e-8);
  };
  const EigenDecomposition ea = super_of(ga);
  const EigenDecomposition eb = super_of(gb);

  double scale = 1.0;
  for (double v : ea.eigenvalues) scale = std::max(scale, std::abs(v));
  for (double v : eb.eigenvalues) scale = std::max(scale, std::abs(v));

  std::vector<std::pair<std::size_t, std::size_t>> matches;  // (a index, b index)
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (std::abs(ea.eigenvalues[i] - eb.eigenvalues[j]) <= 1e-9 * scale) matches.emplace_back(i, j);

  TensorUniquenessReport report;
  report.intertwiner_dim = matches.size();
  if (matches.empty()) {
    report.empty = true;
    report.pass = true;
    return report;
  }

  Rng rng(seed);
  auto column = [](const ComplexMatrix& m, std::size_t j) {
    Vec v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    return v;
  };

  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    // theta = sum over matches of c * u_b u_a^H, as a dim x dim matrix
    ComplexMatrix theta(dim, dim);
    for (const auto& [ia, ib] : matches) {
      const Complex c = rng.complex_normal();
      const Vec ua = column(ea.eigenvectors, ia);
      const Vec ub = column(eb.eigenvectors, ib);
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t cidx = 0; cidx < dim; ++cidx)
          theta(r, cidx) += c * ub[r] * std::conj(ua[cidx]);
    }
    const double fn = theta.frobenius_norm();
    if (fn > 0.0) theta *= Complex{1.0 / fn, 0.0};

    auto apply_theta = [&](const ComplexMatrix& x) {
      const Vec in = flatten(ga, x);
      Vec out(dim, Complex{0.0, 0.0});
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c2 = 0; c2 < dim; ++c2) out[r] += theta(r, c2) * in[c2];
      return unflatten(gb, out);
    };

    for (double t : t_values) {
      for (std::size_t u = 0; u < dim; ++u) {
        const ComplexMatrix x = carrier_basis(ga, u);
        const ComplexMatrix lhs = apply_theta(apply(ga, t, x));
        const ComplexMatrix rhs = apply(gb, t, apply_theta(x));
        worst = std::max(worst, (lhs - rhs).frobenius_norm());
      }
    }
  }
  report.max_residual = worst;
  report.pass = worst <= tol;
  return report;
}

}  // namespace opg
