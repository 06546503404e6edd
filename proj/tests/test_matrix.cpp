#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "opg/matrix.hpp"

using namespace opg;

namespace {

ComplexMatrix from_rows(std::size_t d, std::initializer_list<Complex> entries) {
  ComplexMatrix m(d, d);
  std::size_t i = 0;
  for (Complex v : entries) {
    m(i / d, i % d) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("eig_hermitian on already diagonal input") {
  std::vector<double> diag = {1.0, 2.0, 3.0};
  auto eig = eig_hermitian(ComplexMatrix::diagonal(std::span<const double>(diag)));
  REQUIRE(eig.eigenvalues.size() == 3);
  CHECK(eig.eigenvalues[0] == Catch::Approx(1.0).margin(1e-14));
  CHECK(eig.eigenvalues[1] == Catch::Approx(2.0).margin(1e-14));
  CHECK(eig.eigenvalues[2] == Catch::Approx(3.0).margin(1e-14));
  CHECK(op_norm(eig.eigenvectors - ComplexMatrix::identity(3)) < 1e-12);
}

TEST_CASE("eig_hermitian on the symmetry flip") {
  auto m = from_rows(2, {{0, 0}, {1, 0}, {1, 0}, {0, 0}});
  auto eig = eig_hermitian(m);
  CHECK(eig.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-14));
  CHECK(eig.eigenvalues[1] == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("eig_hermitian reconstruction residual on a seeded 6x6") {
  Rng rng(123);
  ComplexMatrix a = random_hermitian(6, rng, 2.0);
  auto eig = eig_hermitian(a);
  ComplexMatrix recon = eig.eigenvectors *
                        ComplexMatrix::diagonal(std::span<const double>(eig.eigenvalues)) *
                        eig.eigenvectors.adjoint();
  CHECK(op_norm(recon - a) <= 1e-10 * op_norm(a));
  ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
  CHECK(op_norm(gram - ComplexMatrix::identity(6)) <= 1e-10);
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  auto m = from_rows(2, {{0, 0}, {1, 0}, {2, 0}, {0, 0}});
  CHECK_THROWS_AS(eig_hermitian(m), NotHermitian);
}

TEST_CASE("matrix_power basics") {
  std::vector<double> logs = {1.0, 2.0};  // P = diag(e, e^2)
  PositiveMatrix p(ComplexMatrix::identity(2), logs);

  SECTION("zero exponent is the identity") {
    auto r = matrix_power(p, Complex{0.0, 0.0});
    CHECK(op_norm(r - ComplexMatrix::identity(2)) < 1e-14);
  }
  SECTION("w = -1 inverts") {
    auto r = matrix_power(p, Complex{-1.0, 0.0});
    CHECK(std::abs(r(0, 0) - Complex{std::exp(-1.0), 0.0}) < 1e-14);
    CHECK(std::abs(r(1, 1) - Complex{std::exp(-2.0), 0.0}) < 1e-14);
  }
  SECTION("square root") {
    std::vector<double> four = {4.0};
    PositiveMatrix q(ComplexMatrix::diagonal(std::span<const double>(four)));
    auto r = matrix_power(q, Complex{0.5, 0.0});
    CHECK(std::abs(r(0, 0) - Complex{2.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("matrix_power group law and unitarity (property)") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t d = 2 + rep % 4;
    ComplexMatrix h = random_hermitian(d, rng, 1.5);
    auto eig = eig_hermitian(h);
    PositiveMatrix p(eig.eigenvectors, eig.eigenvalues);
    const Complex w1{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const Complex w2{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    ComplexMatrix lhs = matrix_power(p, w1) * matrix_power(p, w2);
    ComplexMatrix rhs = matrix_power(p, w1 + w2);
    CHECK(op_norm(lhs - rhs) <= 1e-9 * op_norm(rhs));

    ComplexMatrix u = matrix_power(p, Complex{0.0, rng.uniform(-4.0, 4.0)});
    CHECK(op_norm(u.adjoint() * u - ComplexMatrix::identity(d)) <= 1e-9);
  }
}

TEST_CASE("degenerate eigenvalues do not disturb the functional calculus") {
  // P with a degenerate eigenvalue; perturb the eigenbasis inside the
  // eigenspace and check matrix_power is unchanged
  std::vector<double> logs = {1.0, 1.0, 2.0};
  PositiveMatrix p(ComplexMatrix::identity(3), logs);
  // rotate within the degenerate block
  ComplexMatrix v = ComplexMatrix::identity(3);
  const double c = std::cos(0.7), s = std::sin(0.7);
  v(0, 0) = c;
  v(0, 1) = -s;
  v(1, 0) = s;
  v(1, 1) = c;
  PositiveMatrix q(v, logs);
  const Complex w{0.3, -1.1};
  CHECK(op_norm(matrix_power(p, w) - matrix_power(q, w)) < 1e-12);
}

TEST_CASE("op_norm basics") {
  CHECK(op_norm(ComplexMatrix(3, 3)) == 0.0);
  std::vector<double> diag = {1.0, -3.0};
  CHECK(op_norm(ComplexMatrix::diagonal(std::span<const double>(diag))) ==
        Catch::Approx(3.0).epsilon(1e-12));
  // a unitary: P^{it}
  Rng rng(9);
  ComplexMatrix h = random_hermitian(4, rng);
  auto eig = eig_hermitian(h);
  PositiveMatrix p(eig.eigenvectors, eig.eigenvalues);
  CHECK(op_norm(matrix_power(p, Complex{0.0, 1.3})) == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("PositiveMatrix rejects non-positive input") {
  std::vector<double> diag = {1.0, -0.5};
  CHECK_THROWS_AS(PositiveMatrix(ComplexMatrix::diagonal(std::span<const double>(diag))),
                  NotPositive);
  std::vector<double> zero = {1.0, 0.0};
  CHECK_THROWS_AS(PositiveMatrix(ComplexMatrix::diagonal(std::span<const double>(zero))),
                  NotPositive);
}

TEST_CASE("subspace_equal") {
  const auto e11 = ComplexMatrix::unit(2, 0, 0);
  const auto e22 = ComplexMatrix::unit(2, 1, 1);

  SECTION("scaling does not matter") {
    std::vector<ComplexMatrix> s1 = {e11};
    std::vector<ComplexMatrix> s2 = {2.0 * e11};
    CHECK(subspace_equal(s1, s2, 1e-10));
  }
  SECTION("orthogonal units differ") {
    std::vector<ComplexMatrix> s1 = {e11};
    std::vector<ComplexMatrix> s2 = {e22};
    CHECK_FALSE(subspace_equal(s1, s2, 1e-10));
  }
  SECTION("change of basis") {
    std::vector<ComplexMatrix> s1 = {e11 + e22, e11 - e22};
    std::vector<ComplexMatrix> s2 = {e11, e22};
    CHECK(subspace_equal(s1, s2, 1e-10));
  }
  SECTION("shape mismatch throws") {
    std::vector<ComplexMatrix> s1 = {e11};
    std::vector<ComplexMatrix> s2 = {ComplexMatrix::unit(3, 0, 0)};
    CHECK_THROWS_AS(subspace_equal(s1, s2, 1e-10), ShapeMismatch);
  }
}
