#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qclone/linalg.hpp"
#include "qclone/oracle/charpoly.hpp"

using namespace qclone;

namespace {

DensityMatrix pure(std::initializer_list<Complex> amps) {
  const PureState s(amps);
  Matrix m(s.size());
  for (std::size_t r = 0; r < s.size(); ++r) {
    for (std::size_t c = 0; c < s.size(); ++c) m(r, c) = s[r] * std::conj(s[c]);
  }
  return DensityMatrix(m);
}

}  // namespace

TEST_CASE("kron") {
  CHECK(kron(Matrix::identity(2), Matrix::identity(2)) == Matrix::identity(4));
  CHECK(kron(Matrix::diagonal({1, 0}), Matrix::diagonal({1, 0})) == Matrix::diagonal({1, 0, 0, 0}));

  const double h = 1.0 / std::sqrt(2.0);
  const DensityMatrix plus = pure({h, h});
  const Matrix both = kron(plus.matrix(), plus.matrix());
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(both(r, c) - 0.25) < 1e-15);
  }

  SUBCASE("result too large") { CHECK_THROWS_AS(kron(Matrix::identity(4), Matrix::identity(4)), DimensionError); }
}

TEST_CASE("matrix dimensions are restricted to 2, 4, 8") {
  CHECK_THROWS_AS(Matrix(3), DimensionError);
  CHECK_THROWS_AS(Matrix(16), DimensionError);
  CHECK_NOTHROW(Matrix(8));
}

TEST_CASE("density matrix invariants") {
  CHECK_THROWS(DensityMatrix(Matrix::diagonal({0.6, 0.6})));              // trace
  CHECK_THROWS(DensityMatrix(Matrix::diagonal({1.5, -0.5})));             // negative eigenvalue
  CHECK_THROWS(DensityMatrix(Matrix::from_rows({{0.5, 0.1}, {0.2, 0.5}})));  // not Hermitian
  Matrix nan = Matrix::diagonal({0.5, 0.5});
  nan(0, 1) = std::nan("");
  CHECK_THROWS(DensityMatrix{nan});
  CHECK(DensityMatrix(Matrix::diagonal({0.5, 0.5})).purity() == doctest::Approx(0.5));
}

TEST_CASE("partial trace") {
  const DensityMatrix zero_zero(Matrix::diagonal({1, 0, 0, 0}));
  CHECK(partial_trace(zero_zero, {0}).matrix() == Matrix::diagonal({1, 0}));
  CHECK(partial_trace(zero_zero, {1}).matrix() == Matrix::diagonal({1, 0}));

  const double h = 1.0 / std::sqrt(2.0);
  const DensityMatrix bell = pure({h, 0, 0, h});
  CHECK(max_abs_diff(partial_trace(bell, {0}).matrix(), 0.5 * Matrix::identity(2)) < 1e-15);
  CHECK(max_abs_diff(partial_trace(bell, {1}).matrix(), 0.5 * Matrix::identity(2)) < 1e-15);

  SUBCASE("kept order decides the subsystem order") {
    const DensityMatrix ab(kron(Matrix::diagonal({1, 0}), Matrix::diagonal({0, 1})));
    const DensityMatrix rho(kron(ab.matrix(), Matrix::diagonal({1, 0})));
    CHECK(partial_trace(rho, {0, 1}).matrix() == kron(Matrix::diagonal({1, 0}), Matrix::diagonal({0, 1})));
    CHECK(partial_trace(rho, {1, 0}).matrix() == kron(Matrix::diagonal({0, 1}), Matrix::diagonal({1, 0})));
  }

  SUBCASE("matches explicit index sums on random states") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
      const PureState s = oracle_test::random_state(rng, 3);
      Matrix m(8);
      for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) m(r, c) = s[r] * std::conj(s[c]);
      }
      const DensityMatrix rho(m);
      for (int q = 0; q < 3; ++q) {
        CHECK(max_abs_diff(partial_trace(rho, {q}).matrix(), oracle_test::reduce_single(s, q)) < 1e-14);
      }
    }
  }

  SUBCASE("invalid keep sets") {
    CHECK_THROWS(partial_trace(zero_zero, {2}));
    CHECK_THROWS(partial_trace(zero_zero, {0, 0}));
  }
}

TEST_CASE("partial transpose") {
  SUBCASE("product state with real entries stays positive") {
    const Matrix a = Matrix::from_rows({{0.7, 0.2}, {0.2, 0.3}});
    const Matrix b = Matrix::from_rows({{0.4, 0.1}, {0.1, 0.6}});
    const Matrix pt = partial_transpose(DensityMatrix(kron(a, b)));
    CHECK(max_abs_diff(pt, kron(a, b.transpose())) < 1e-15);
    CHECK(hermitian_eigenvalues(pt).front() >= -1e-12);
  }
  SUBCASE("Bell state has eigenvalue -1/2") {
    const double h = 1.0 / std::sqrt(2.0);
    const auto eig = hermitian_eigenvalues(partial_transpose(pure({h, 0, 0, h})));
    CHECK(eig.front() == doctest::Approx(-0.5).epsilon(1e-12));
  }
  SUBCASE("involution and trace on random states") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
      const DensityMatrix rho = oracle_test::random_density(rng, 4);
      for (int sub : {0, 1}) {
        const Matrix pt = partial_transpose(rho, sub);
        CHECK(partial_transpose(pt, sub) == rho.matrix());
        CHECK(std::abs(pt.trace() - 1.0) < 1e-14);
      }
      // Transposing both subsystems is the full transpose.
      CHECK(max_abs_diff(partial_transpose(partial_transpose(rho, 0), 1), rho.matrix().transpose()) == 0.0);
    }
  }
  CHECK_THROWS(partial_transpose(Matrix::identity(8)));
  CHECK_THROWS(partial_transpose(Matrix::identity(4), 2));
}

TEST_CASE("hermitian eigenvalues") {
  const auto eig = hermitian_eigenvalues((1.0 / 6.0) * Matrix::diagonal({4, 1, 1, 0}));
  REQUIRE(eig.size() == 4);
  CHECK(eig[0] == doctest::Approx(0.0));
  CHECK(eig[1] == doctest::Approx(1.0 / 6.0));
  CHECK(eig[2] == doctest::Approx(1.0 / 6.0));
  CHECK(eig[3] == doctest::Approx(2.0 / 3.0));

  CHECK_THROWS(hermitian_eigenvalues(Matrix::from_rows({{1, 2}, {0, 1}})));

  SUBCASE("agrees with characteristic-polynomial roots") {
    std::mt19937_64 rng(2024);
    for (std::size_t dim : {2U, 4U, 8U}) {
      for (int i = 0; i < 30; ++i) {
        const Matrix h = oracle_test::random_hermitian(rng, dim);
        const auto a = hermitian_eigenvalues(h);
        const auto b = oracle::eigenvalues_by_charpoly(h);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-8);
      }
    }
  }

  SUBCASE("degenerate spectrum") {
    const auto a = oracle::eigenvalues_by_charpoly(Matrix::identity(4));
    for (double v : a) CHECK(v == doctest::Approx(1.0));
    for (double v : hermitian_eigenvalues(Matrix::identity(4))) CHECK(v == doctest::Approx(1.0));
  }
}

TEST_CASE("hilbert-schmidt distance") {
  const DensityMatrix zero(Matrix::diagonal({1, 0}));
  const DensityMatrix one(Matrix::diagonal({0, 1}));
  CHECK(hs_distance(zero, zero) == 0.0);
  CHECK(hs_distance(zero, one) == doctest::Approx(2.0));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix a = oracle_test::random_density(rng, 4);
    const DensityMatrix b = oracle_test::random_density(rng, 4);
    CHECK(hs_distance(a, b) == doctest::Approx(oracle_test::hs_by_product(a.matrix(), b.matrix())).epsilon(1e-12));
    CHECK(hs_distance(a, b) == doctest::Approx(hs_distance(b, a)));
  }
  CHECK_THROWS(hs_distance(Matrix::identity(2), Matrix::identity(4)));
}

TEST_CASE("reverse basis") {
  const Matrix m = Matrix::diagonal({1, 2, 3, 4});
  CHECK(reverse_basis(m) == Matrix::diagonal({4, 3, 2, 1}));
  CHECK(reverse_basis(reverse_basis(m)) == m);
}
