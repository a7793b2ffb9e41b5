#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qclone/copier.hpp"

using namespace qclone;
using std::numbers::pi;

namespace {

const double kTheta2 = std::asin(std::sqrt(0.5 - std::sqrt(2.0) / 3.0));

}  // namespace

TEST_CASE("input qubit parametrization") {
  const InputQubit q{0.3, 1.1};
  CHECK(q.alpha() == std::polar(std::sin(0.3), 1.1));
  CHECK(q.beta() == Complex(std::cos(0.3), 0.0));
  CHECK(q.state().norm_squared() == doctest::Approx(1.0));

  SUBCASE("from amplitudes") {
    const InputQubit up = InputQubit::from_amplitudes(1.0, 0.0);
    CHECK(up.theta == doctest::Approx(pi / 2.0));
    CHECK(up.phi == 0.0);
    // A global phase on both amplitudes is dropped.
    const Complex g = std::polar(1.0, 0.8);
    const InputQubit r = InputQubit::from_amplitudes(g * q.alpha(), g * q.beta());
    CHECK(r.theta == doctest::Approx(0.3));
    CHECK(r.phi == doctest::Approx(1.1));
    const InputQubit neg = InputQubit::from_amplitudes(std::sin(0.3), -std::cos(0.3));
    CHECK(neg.phi == doctest::Approx(pi));
    CHECK_THROWS(InputQubit::from_amplitudes(1.0, 1.0));
    CHECK_NOTHROW(InputQubit::from_amplitudes(1.0 + 1e-7, 0.0, 1e-6));
  }
}

TEST_CASE("angle solver") {
  SUBCASE("duplicator") {
    const PreparationAngles a = solve_preparation_angles(variant_amplitudes(CopyVariant::Duplicator));
    CHECK(a.theta1 == doctest::Approx(pi / 8.0).epsilon(1e-12));
    CHECK(a.theta2 == doctest::Approx(-kTheta2).epsilon(1e-12));
    CHECK(a.theta3 == doctest::Approx(pi / 8.0).epsilon(1e-12));
  }
  SUBCASE("triplicator") {
    const PreparationAngles a = solve_preparation_angles(variant_amplitudes(CopyVariant::Triplicator));
    CHECK(a.theta1 == doctest::Approx(pi / 8.0).epsilon(1e-12));
    CHECK(a.theta2 == doctest::Approx(kTheta2).epsilon(1e-12));
    CHECK(a.theta3 == doctest::Approx(pi / 8.0).epsilon(1e-12));
  }
  SUBCASE("trivial target") {
    const PreparationAngles a = solve_preparation_angles(PreparationAmplitudes({1, 0, 0, 0}));
    CHECK(std::abs(a.theta1) < 1e-12);
    CHECK(std::abs(a.theta2) < 1e-12);
    CHECK(std::abs(a.theta3) < 1e-12);
  }
  SUBCASE("closed-form amplitudes agree with simulation") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int i = 0; i < 50; ++i) {
      const PreparationAngles a{angle(rng), angle(rng), angle(rng)};
      const auto c = preparation_amplitudes(a);
      const PureState s = run_network(PureState(2), preparation_network(a, 0, 1));
      for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(s[k] - c[k]) < 1e-14);
      }
    }
  }
  SUBCASE("random targets") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> normal;
    for (int i = 0; i < 100; ++i) {
      std::array<double, 4> c{};
      double n = 0.0;
      for (double& x : c) {
        x = normal(rng);
        n += x * x;
      }
      for (double& x : c) x /= std::sqrt(n);
      const PreparationAmplitudes target(c);
      const PreparationAngles a = solve_preparation_angles(target);
      CHECK(angle_residual(a, target) <= kAngleResidualTolerance);
      for (double th : {a.theta1, a.theta2, a.theta3}) {
        CHECK(th > -pi);
        CHECK(th <= pi);
      }
    }
  }
  CHECK_THROWS(PreparationAmplitudes({1, 1, 0, 0}));
}

TEST_CASE("preparation and copy stage") {
  CHECK(run_network(PureState(2), preparation_network({}, 0, 1)) == PureState(2));
  const double k = 1.0 / std::sqrt(12.0);
  CHECK(max_abs_diff(run_network(PureState(2), preparation_network(variant_angles(CopyVariant::Triplicator), 0, 1)),
                     PureState{3 * k, k, k, k}) < 1e-12);
  CHECK(run_network(PureState(3), copy_stage_network()) == PureState(3));

  const GateNetwork full = copier_network(CopyVariant::Duplicator);
  CHECK(full.size() == 9);
  CHECK(full == preparation_network(variant_angles(CopyVariant::Duplicator)) + copy_stage_network());
}

TEST_CASE("ideal density") {
  // theta = 0 means alpha = 0, beta = 1: the state |1>.
  CHECK(max_abs_diff(ideal_density({0.0, 0.0}, 1).matrix(), Matrix::diagonal({0, 1})) < 1e-15);
  const Matrix two = ideal_density({pi / 4.0, 0.0}, 2).matrix();
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(two(r, c) - 0.25) < 1e-15);
  }
  const auto eig = hermitian_eigenvalues(ideal_density({0.9, 2.3}, 3).matrix());
  CHECK(eig.back() == doctest::Approx(1.0));
  for (std::size_t i = 0; i + 1 < eig.size(); ++i) CHECK(std::abs(eig[i]) < 1e-12);
  CHECK_THROWS(ideal_density({0.0, 0.0}, 4));
}

TEST_CASE("scaling decomposition") {
  const InputQubit in{0.4, 0.9};
  const DensityMatrix id = ideal_density(in, 1);
  CHECK(*scaling_decompose(id, id) == doctest::Approx(1.0));
  CHECK(*scaling_decompose(DensityMatrix(0.5 * Matrix::identity(2)), id) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS(fit_scaling(id, DensityMatrix(0.5 * Matrix::identity(2))));

  // Anything off the line between rho_id and I/2 has no scaled form.
  const DensityMatrix other = ideal_density({1.2, 0.1}, 1);
  CHECK_FALSE(scaling_decompose(other, id).has_value());
  CHECK(fit_scaling(other, id).residual > 1e-3);
}

TEST_CASE("fidelity split") {
  const InputQubit in{1.0, 2.0};
  const FidelitySplit self = fidelity_split(ideal_density(in, 1), in);
  CHECK(self.ideal == doctest::Approx(1.0));
  CHECK(std::abs(self.orthogonal) < 1e-15);
  const FidelitySplit mixed = fidelity_split(DensityMatrix(0.5 * Matrix::identity(2)), in);
  CHECK(mixed.ideal == doctest::Approx(0.5));
  CHECK(mixed.orthogonal == doctest::Approx(0.5));
}

TEST_CASE("duplicator reports") {
  const CopyReport r = run_copier({pi / 4.0, 0.0}, CopyVariant::Duplicator);
  for (int q : {kCopyA, kCopyB}) {
    CHECK(r.distances.d1[q] == doctest::Approx(1.0 / 18.0).epsilon(1e-12));
    CHECK(*r.scaling[q] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(r.fidelity[q].ideal == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  }
  CHECK(r.distances.d2[0] == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
  CHECK_FALSE(r.distances.d3.has_value());

  SUBCASE("copies match the reduction by explicit index sums") {
    for (int q = 0; q < 3; ++q) CHECK(max_abs_diff(r.qubits[q].matrix(), oracle_test::reduce_single(r.output, q)) < 1e-15);
  }
  SUBCASE("basis input still loses a sixth") {
    const CopyReport b = run_copier({0.0, 0.0}, CopyVariant::Duplicator);
    CHECK(b.fidelity[kCopyA].ideal == doctest::Approx(5.0 / 6.0));
  }
}

TEST_CASE("original qubit is the scaled transpose") {
  SUBCASE("real inputs: transpose is a no-op") {
    const InputQubit in{0.7, 0.0};
    const CopyReport r = run_copier(in, CopyVariant::Duplicator);
    const Matrix want = (1.0 / 3.0) * ideal_density(in, 1).matrix() + (1.0 / 3.0) * Matrix::identity(2);
    CHECK(max_abs_diff(r.qubits[kOriginal].matrix(), want) < 1e-12);
    CHECK(original_transpose_check(r).holds);
  }
  SUBCASE("quarter-turn phase flips the off-diagonal sign") {
    const InputQubit in{pi / 4.0, pi / 2.0};
    const CopyReport r = run_copier(in, CopyVariant::Duplicator);
    const Matrix rho = ideal_density(in, 1).matrix();
    const Matrix naive = (1.0 / 3.0) * rho + (1.0 / 3.0) * Matrix::identity(2);
    const Complex got = r.qubits[kOriginal](0, 1);
    CHECK(std::abs(got + naive(0, 1)) < 1e-12);
    CHECK(std::abs(got - naive(0, 1)) > 0.1);
    CHECK(original_transpose_check(r).holds);
    CHECK(std::abs(r.qubits[kOriginal].matrix().trace() - 1.0) < 1e-14);
  }
  SUBCASE("expectation recovery identity") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 20; ++i) {
      const Matrix rho = oracle_test::random_density(rng, 2).matrix();
      const Matrix a = oracle_test::random_hermitian(rng, 2);
      const auto sides = transposed_expectation(rho, a);
      CHECK(std::abs(sides[0] - sides[1]) < 1e-14);
    }
  }
  CHECK_THROWS(original_transpose_check(run_copier({0.2, 0.2}, CopyVariant::Triplicator)));
}

TEST_CASE("triplicator reports") {
  SUBCASE("basis input") {
    const CopyReport r = run_copier({0.0, 0.0}, CopyVariant::Triplicator);
    const double k = 1.0 / std::sqrt(12.0);
    CHECK(max_abs_diff(r.output, PureState{0, k, k, 0, k, 0, 0, 3 * k}) < 1e-12);
  }
  SUBCASE("complex input") {
    const CopyReport r = run_copier({pi / 3.0, pi / 2.0}, CopyVariant::Triplicator);
    const double d1 = (1.0 + 9.0 / 4.0) / 18.0;
    for (int q = 0; q < 3; ++q) {
      CHECK(r.distances.d1[q] == doctest::Approx(d1).epsilon(1e-12));
      CHECK_FALSE(r.scaling[q].has_value());
    }
    REQUIRE(r.distances.d3.has_value());
    CHECK(*r.distances.d3 == doctest::Approx(0.5 * (1.0 + 9.0 / 4.0)).epsilon(1e-12));
  }
  SUBCASE("distances are smallest for real amplitudes") {
    for (double theta : {0.2, 0.6, 1.1}) {
      const CopyReport real = run_copier({theta, 0.0}, CopyVariant::Triplicator);
      const CopyReport flipped = run_copier({theta, pi}, CopyVariant::Triplicator);
      for (int j = 1; j < 40; ++j) {
        const double phi = j * 2.0 * pi / 40.0;
        const CopyReport r = run_copier({theta, phi}, CopyVariant::Triplicator);
        CHECK(r.distances.d1[0] >= real.distances.d1[0] - 1e-15);
        CHECK(r.distances.d2[0] >= real.distances.d2[0] - 1e-15);
        CHECK(*r.distances.d3 >= *real.distances.d3 - 1e-15);
      }
      CHECK(flipped.distances.d1[0] == doctest::Approx(real.distances.d1[0]));
    }
  }
}

TEST_CASE("generic output analysis") {
  const InputQubit in{0.5, 1.3};
  const CopyReport r = run_copier(in, CopyVariant::Triplicator);
  const StateAnalysis a = analyze_output(run_network(embed_input(in, 3), copier_network(CopyVariant::Triplicator)), in);
  REQUIRE(a.qubits.size() == 3);
  REQUIRE(a.pairs.size() == 3);
  for (int q = 0; q < 3; ++q) CHECK(a.qubits[q].d1 == doctest::Approx(r.distances.d1[q]));
  CHECK(*a.d3 == doctest::Approx(*r.distances.d3));
  // Pairs come as (0,1), (0,2), (1,2).
  CHECK(a.pairs[2].first == 1);
  CHECK(a.pairs[2].d2 == doctest::Approx(r.distances.d2[0]));

  const StateAnalysis one = analyze_output(embed_input(in, 1), in);
  CHECK(one.qubits.size() == 1);
  CHECK(one.pairs.empty());
  CHECK(std::abs(one.qubits[0].d1) < 1e-15);
  CHECK_FALSE(one.d3.has_value());
}
