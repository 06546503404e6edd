#include "opg/modular.hpp"

#include <algorithm>
#include <cmath>

namespace opg {

namespace {

PositiveMatrix checked_density(const ComplexMatrix& density, double trace_tol, double min_eig) {
  PositiveMatrix rho = [&] {
    try {
      return PositiveMatrix(density);
    } catch (const NotPositive&) {
      throw NotAState("density is not positive definite");
    } catch (const NotHermitian&) {
      throw NotAState("density is not Hermitian");
    }
  }();
  const Complex tr = density.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > trace_tol)
    throw NotAState("density trace is " + std::to_string(tr.real()) + ", expected 1");
  if (rho.eigenvalues().front() < min_eig)
    throw NotFaithful("smallest density eigenvalue " +
                      std::to_string(rho.eigenvalues().front()) + " is below working precision");
  return rho;
}

}  // namespace

FaithfulState::FaithfulState(const ComplexMatrix& density, double trace_tol, double min_eig)
    : density_(checked_density(density, trace_tol, min_eig)) {}

ModularData::ModularData(FaithfulState state, double tol)
    : state_(std::move(state)), sigma_(build_modular_group(state_.density())) {
  rho_half_ = matrix_power(state_.density(), Complex{0.5, 0.0});
  const std::size_t d = state_.dim();
  double worst = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      const ComplexMatrix x = ComplexMatrix::unit(d, j, k);
      const ComplexMatrix lhs = tomita(embed(x));
      const ComplexMatrix rhs = embed(x.adjoint());
      worst = std::max(worst, (lhs - rhs).frobenius_norm());
    }
  }
  construction_residual_ = worst;
  if (worst > tol)
    throw Error("modular construction failed: S Lambda(x) != Lambda(x*), defect " +
                std::to_string(worst));
}

ComplexMatrix ModularData::embed(const ComplexMatrix& x) const { return x * rho_half_; }

Complex ModularData::inner(const ComplexMatrix& a, const ComplexMatrix& b) const {
  return (a.adjoint() * b).trace();
}

ComplexMatrix ModularData::delta_pow(Complex w, const ComplexMatrix& xi) const {
  return matrix_power(state_.density(), w) * xi * matrix_power(state_.density(), -w);
}

ComplexMatrix ModularData::conjugation(const ComplexMatrix& xi) const { return xi.adjoint(); }

ComplexMatrix ModularData::tomita(const ComplexMatrix& xi) const {
  return conjugation(delta_pow(Complex{0.5, 0.0}, xi));
}

ComplexMatrix ModularData::delta_superop() const {
  const std::size_t d = dim();
  const ComplexMatrix& rho = state_.density().matrix();
  const ComplexMatrix rho_inv = matrix_power(state_.density(), Complex{-1.0, 0.0});
  ComplexMatrix s(d * d, d * d);
  // vec(rho X rho^{-1}) = (rho kron rho^{-T}) vec(X), row-major
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          s(i * d + k, j * d + l) = rho(i, j) * rho_inv(l, k);
  return s;
}

ModularData build_modular(const FaithfulState& state, double tol) {
  return ModularData(state, tol);
}

bool verify_kms(const ModularData& md, const ComplexMatrix& a, const ComplexMatrix& b,
                double tol) {
  const std::size_t d = md.dim();
  if (a.rows() != d || a.cols() != d || b.rows() != d || b.cols() != d)
    throw ShapeMismatch("KMS arguments must live on the state's carrier");
  const ComplexMatrix& rho = md.state().density().matrix();
  const double scale =
      std::max({op_norm(a), op_norm(b), 1e-300}) * std::max(op_norm(rho), 1e-300);

  double worst = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      const ComplexMatrix x = ComplexMatrix::unit(d, j, k);
      const Complex lhs = (rho * a * x).trace();
      const Complex rhs = (rho * x * b).trace();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  const bool trace_test = worst <= tol * scale;

  const ComplexMatrix expected = md.delta_pow(Complex{1.0, 0.0}, a);  // rho a rho^{-1}
  const double direct = (b - expected).frobenius_norm();
  const double direct_scale = std::max({expected.frobenius_norm(), b.frobenius_norm(), 1e-300});
  const bool spectral_test = direct <= tol * direct_scale;
  const bool ambiguous =
      (worst > 0.1 * tol * scale && worst < 10.0 * tol * scale) ||
      (direct > 0.1 * tol * direct_scale && direct < 10.0 * tol * direct_scale);
  if (!ambiguous && trace_test != spectral_test)
    throw Error("KMS trace identity disagrees with b = rho a rho^{-1}");
  return trace_test;
}

MarkovSetup::MarkovSetup(FaithfulState ambient, std::vector<std::size_t> blocks, double block_tol)
    : ambient_(std::move(ambient)), blocks_(std::move(blocks)) {
  const std::size_t d = ambient_.dim();
  std::size_t total = 0;
  block_offsets_.clear();
  for (std::size_t b : blocks_) {
    if (b == 0) throw NotBlockCompatible("zero block size");
    block_offsets_.push_back(total);
    total += b;
  }
  if (total != d) throw NotBlockCompatible("block sizes must sum to the carrier dimension");

  const ComplexMatrix& rho = ambient_.density().matrix();
  auto block_of = [&](std::size_t idx) {
    std::size_t b = 0;
    while (b + 1 < blocks_.size() && idx >= block_offsets_[b + 1]) ++b;
    return b;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (block_of(i) != block_of(j) && std::abs(rho(i, j)) > block_tol)
        throw NotBlockCompatible("state has off-block entries");

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (block_of(i) == block_of(j)) sub_units_.emplace_back(i, j);

  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const std::size_t off = block_offsets_[b];
    const std::size_t n = blocks_[b];
    ComplexMatrix sub(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sub(i, j) = rho(off + i, off + j);
    block_densities_.emplace_back(sub);
  }
}

ComplexMatrix MarkovSetup::t_matrix() const {
  const std::size_t d = dim();
  ComplexMatrix t(d * d, sub_units_.size());
  for (std::size_t c = 0; c < sub_units_.size(); ++c)
    t(sub_units_[c].first * d + sub_units_[c].second, c) = 1.0;
  return t;
}

ComplexMatrix MarkovSetup::delta_ambient_pow(Complex w) const {
  const std::size_t d = dim();
  const ComplexMatrix pw = matrix_power(ambient_.density(), w);
  const ComplexMatrix pmw = matrix_power(ambient_.density(), -w);
  ComplexMatrix s(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          s(i * d + k, j * d + l) = pw(i, j) * pmw(l, k);
  return s;
}

ComplexMatrix MarkovSetup::rho_sub_pow(Complex w) const {
  const std::size_t d = dim();
  ComplexMatrix out(d, d);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const std::size_t off = block_offsets_[b];
    const std::size_t n = blocks_[b];
    const ComplexMatrix pw = matrix_power(block_densities_[b], w);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(off + i, off + j) = pw(i, j);
  }
  return out;
}

ComplexMatrix MarkovSetup::delta_sub_pow(Complex w) const {
  const ComplexMatrix pw = rho_sub_pow(w);
  const ComplexMatrix pmw = rho_sub_pow(-w);
  const std::size_t dn = sub_units_.size();
  ComplexMatrix s(dn, dn);
  for (std::size_t r = 0; r < dn; ++r) {
    const auto [a, bidx] = sub_units_[r];
    for (std::size_t c = 0; c < dn; ++c) {
      const auto [j, k] = sub_units_[c];
      s(r, c) = pw(a, j) * pmw(k, bidx);
    }
  }
  return s;
}

double MarkovSetup::isometry_residual() const {
  const ComplexMatrix t = t_matrix();
  ComplexMatrix gram = t.adjoint() * t;
  gram -= ComplexMatrix::identity(sub_units_.size());
  return gram.frobenius_norm();
}

double MarkovSetup::intertwining_residual() const {
  const ComplexMatrix t = t_matrix();
  double worst = 0.0;
  for (double tv : {0.7, -0.7, 2.3, -2.3}) {
    const Complex it{0.0, tv};
    const ComplexMatrix lhs = delta_ambient_pow(it) * t;
    const ComplexMatrix rhs = t * delta_sub_pow(it);
    worst = std::max(worst, op_norm(lhs - rhs));
  }
  return worst;
}

MarkovSetup build_markov(const FaithfulState& ambient, const std::vector<std::size_t>& blocks) {
  MarkovSetup ms(ambient, blocks);
  const double res = ms.intertwining_residual();
  if (res > 1e-9)
    throw Error("Markov setup failed the modular intertwining hypothesis, residual " +
                std::to_string(res));
  return ms;
}

MarkovReport verify_bcm_commutation(const MarkovSetup& ms, double t, double tol) {
  const ComplexMatrix tm = ms.t_matrix();
  const ComplexMatrix lhs =
      ms.delta_ambient_pow(Complex{-t, 0.0}) * tm * ms.delta_sub_pow(Complex{t, 0.0});
  MarkovReport report;
  report.residual = op_norm(lhs - tm) / std::max(op_norm(tm), 1e-300);
  report.pass = report.residual <= tol;
  return report;
}

MarkovReport verify_bcm_closure(const MarkovSetup& ms, Complex z, double tol) {
  const ComplexMatrix tm = ms.t_matrix();
  const ComplexMatrix lhs = tm * ms.delta_sub_pow(z);
  const ComplexMatrix rhs = ms.delta_ambient_pow(z) * tm;
  MarkovReport report;
  const double scale = std::max({op_norm(lhs), op_norm(rhs), 1e-300});
  report.residual = op_norm(lhs - rhs) / scale;
  report.pass = report.residual <= tol;
  return report;
}

MarkovReport verify_j_intertwine(const MarkovSetup& ms, double tol) {
  const std::size_t d = ms.dim();
  double worst = 0.0;
  // J_phi T J_rho on the subalgebra GNS basis; two conjugations make the
  // composite linear, so the basis action decides everything
  for (const auto& [j, k] : ms.sub_units()) {
    const ComplexMatrix xi = ComplexMatrix::unit(d, j, k);
    const ComplexMatrix composite = xi.adjoint().adjoint();  // J_phi(T(J_rho(xi)))
    worst = std::max(worst, (composite - xi).frobenius_norm());
  }
  // the half-strip chain on the subalgebra: sigma^rho_{i/2} agrees with
  // sigma^phi_{i/2} through the inclusion, per-block path vs ambient path
  const ComplexMatrix amb_m = matrix_power(ms.ambient().density(), Complex{-0.5, 0.0});
  const ComplexMatrix amb_p = matrix_power(ms.ambient().density(), Complex{0.5, 0.0});
  const ComplexMatrix sub_m = ms.rho_sub_pow(Complex{-0.5, 0.0});
  const ComplexMatrix sub_p = ms.rho_sub_pow(Complex{0.5, 0.0});
  for (const auto& [j, k] : ms.sub_units()) {
    const ComplexMatrix x = ComplexMatrix::unit(d, j, k);
    const ComplexMatrix lhs = sub_m * x * sub_p;
    const ComplexMatrix rhs = amb_m * x * amb_p;
    worst = std::max(worst, (lhs - rhs).frobenius_norm() /
                                std::max(rhs.frobenius_norm(), 1e-300));
  }
  MarkovReport report;
  report.residual = worst;
  report.pass = worst <= tol;
  return report;
}

}  // namespace opg
