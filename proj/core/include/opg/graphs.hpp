#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "opg/continuation.hpp"
#include "opg/groups.hpp"

namespace opg {

/// A pair (a, alpha_z(a)) of the graph of alpha_z; the second component is
/// stored, not recomputed, so membership stays a checked invariant.
template <class X>
struct GraphElement {
  X first;
  X second;
};

/// Relative distance between b and alpha_z(a); the membership defect.
template <class G, class X>
double graph_membership_residual(const G& g, Complex z, const X& a, const X& b) {
  const Vec lhs = flatten(g, b);
  const Vec rhs = flatten(g, alpha_z_spectral(g, z, a));
  double s = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) s += std::norm(lhs[i] - rhs[i]);
  const double scale = std::max({carrier_norm(g, a), carrier_norm(g, b), 1e-300});
  return std::sqrt(s) / scale;
}

/// Builds (a, alpha_z(a)).
template <class G, class X>
GraphElement<X> graph_element(const G& g, Complex z, const X& a) {
  return GraphElement<X>{a, alpha_z_spectral(g, z, a)};
}

/// Admits a caller-supplied pair after verifying membership to `tol`.
template <class G, class X>
GraphElement<X> graph_element_checked(const G& g, Complex z, X a, X b, double tol = 1e-8) {
  const double defect = graph_membership_residual(g, z, a, b);
  if (defect > tol)
    throw Error("pair is not in the graph of alpha_z (membership defect " +
                std::to_string(defect) + ")");
  return GraphElement<X>{std::move(a), std::move(b)};
}

// --- carrier algebra -------------------------------------------------------

ComplexMatrix carrier_multiply(const ImplementedGroup&, const ComplexMatrix& x,
                               const ComplexMatrix& y);
CornerElement carrier_multiply(const EmbeddedCornerGroup&, const CornerElement& x,
                               const CornerElement& y);
ComplexMatrix carrier_adjoint(const ImplementedGroup&, const ComplexMatrix& x);
CornerElement carrier_adjoint(const EmbeddedCornerGroup&, const CornerElement& x);
ComplexMatrix carrier_unit(const ImplementedGroup& g);
CornerElement carrier_unit(const EmbeddedCornerGroup& g);

/// Componentwise product of graph elements; the graph is closed under it and
/// the result's membership is re-verified.  Rejected for diagonal carriers:
/// a multiplier group is an isometry group but not an automorphism group.
template <class G, class X>
GraphElement<X> graph_product(const G& g, Complex z, const GraphElement<X>& g1,
                              const GraphElement<X>& g2, double tol = 1e-8) {
  return graph_element_checked(g, z, carrier_multiply(g, g1.first, g2.first),
                               carrier_multiply(g, g1.second, g2.second), tol);
}

GraphElement<Vec> graph_product(const DiagonalGroup&, Complex, const GraphElement<Vec>&,
                                const GraphElement<Vec>&, double tol = 1e-8);

/// The involution (a, b) -> (b*, a*) of the graph of alpha_{-i}; equivalently
/// a -> alpha_{-i}(a)* on first components.  Throws WrongExponent unless
/// z = -i, and verifies that applying it twice returns the argument.
template <class G, class X>
GraphElement<X> natural_involution(const G& g, Complex z, const GraphElement<X>& el,
                                   double tol = 1e-8) {
  if (z != Complex{0.0, -1.0}) throw WrongExponent("the graph involution lives at z = -i");
  GraphElement<X> out = graph_element_checked(g, z, carrier_adjoint(g, el.second),
                                              carrier_adjoint(g, el.first), tol);
  // applying twice is the identity; adjoints are entrywise exact
  const double back = graph_membership_residual(g, z, carrier_adjoint(g, out.second), el.second);
  if (back > tol) throw Error("graph involution failed to be involutive");
  return out;
}

/// Basis of the fixed-point algebra {x : alpha_t(x) = x for all t}, i.e. the
/// commutant of the implementer inside M_d, read off the eigenvalue blocks of
/// the generator.  Each basis element x yields a graph pair (x, x) fixed by
/// the involution; both memberships are asserted.
std::vector<ComplexMatrix> selfadjoint_part(const ImplementedGroup& g, double tol = 1e-8);

/// The spectral subspace of multiplier weights p_k / p_j <= 1: matrix units
/// whose orbit norms stay bounded along the positive imaginary axis.
struct SpectralSubspace {
  std::size_t dim = 0;
  std::vector<std::pair<std::size_t, std::size_t>> units;  // included (j, k)
  std::vector<double> ratios;                              // p_k / p_j per unit
  double max_limsup_deviation = 0.0;  // numerical ||alpha_{in}||^{1/n} vs ratio
};

/// For P diagonal in the standard basis: all units e_{jk} with
/// p_k / p_j <= 1 + 1e-12, checked against the numerical growth criterion
/// ||alpha_{in}(e_{jk})||^{1/n} for n = 1..12.  Throws NotDiagonal otherwise.
SpectralSubspace hinfty_basis(const ImplementedGroup& g);

struct KaplanskyReport {
  std::vector<std::size_t> cutoffs;
  std::vector<double> graph_norms;     // max(||X_k||, ||tau_{-i}(X_k)||)
  std::vector<double> entry_distance;  // max entry of |X - X_k|
  bool pass = false;
};

/// Truncation net for a corner element in the unit graph ball: each cutoff
/// zeroes every block entry beyond it.  Truncations are finitely supported,
/// never leave the graph ball (up to 1e-12), and converge entrywise.
KaplanskyReport kaplansky_truncation(const EmbeddedCornerGroup& g, const CornerElement& x,
                                     const std::vector<std::size_t>& cutoffs);

struct DualGeneratorReport {
  std::size_t graph_dim = 0;
  double residual = 0.0;
  bool pass = false;
};

/// The dual of the generator is the generator of the dual group: the graph of
/// alpha_z on the dual coordinates, built (i) spectrally from the adjoint
/// group and (ii) as the annihilator (j G(alpha_z))^perp with j(x, y) =
/// (-y, x), must agree as subspaces.
DualGeneratorReport dual_generator_check(const DiagonalGroup& g, Complex z, double tol = 1e-9);
DualGeneratorReport dual_generator_check(const ImplementedGroup& g, Complex z, double tol = 1e-9);

struct GraphIntersectionReport {
  bool seq_in_c0_domain = false;
  bool seq_in_linf_domain = false;
  bool image_in_c0 = false;
  bool image_in_linf = false;
  bool consistent = false;  // c0 domain == (linf domain and pair inside the c0 model)
  bool strict_gap = false;  // in the linf domain but not the c0 domain
};

/// The c0-model graph is the linf-model graph intersected with the c0 pairs:
/// evaluates the four exact memberships for a geometric sequence at z = -i
/// and checks that logic.  Throws WrongExponent unless z = -i, and
/// UnsupportedGroup off the integer-weight model.
GraphIntersectionReport graph_intersection_check(const EmbeddedCornerGroup& g,
                                                 const GeometricSequence& seq, Complex z);

struct TensorUniquenessReport {
  std::size_t intertwiner_dim = 0;
  double max_residual = 0.0;
  bool empty = false;  // vacuously true when no intertwiner exists
  bool pass = false;
};

/// Maps intertwining the -i generators intertwine the whole groups: solves
/// theta o Ad(P_A) = Ad(P_B) o theta as a linear constraint, samples the
/// solution space, and checks theta alpha_t = beta_t theta at the given
/// times.
TensorUniquenessReport tensor_uniqueness_check(const ImplementedGroup& ga,
                                               const ImplementedGroup& gb, std::size_t samples,
                                               const std::vector<double>& t_values,
                                               std::uint64_t seed = 42, double tol = 1e-9);

}  // namespace opg
