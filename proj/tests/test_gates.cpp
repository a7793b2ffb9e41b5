#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qclone/gates.hpp"

using namespace qclone;
using std::numbers::pi;

TEST_CASE("rotation") {
  const PureState zero(1);
  CHECK(apply_rotation(zero, 0, 0.0) == zero);
  CHECK(max_abs_diff(apply_rotation(zero, 0, pi / 2.0), PureState::basis(1, 1)) < 1e-16);
  const PureState first = apply_rotation(zero, 0, pi / 8.0);
  CHECK(first[0].real() == doctest::Approx(std::cos(pi / 8.0)));
  CHECK(first[1].real() == doctest::Approx(std::sin(pi / 8.0)));
  // |1> -> -sin|0> + cos|1>
  const PureState flipped = apply_rotation(PureState::basis(1, 1), 0, 0.3);
  CHECK(flipped[0].real() == doctest::Approx(-std::sin(0.3)));
  CHECK(flipped[1].real() == doctest::Approx(std::cos(0.3)));
}

TEST_CASE("cnot truth table") {
  // Two qubits, control 0 (high bit), target 1.
  CHECK(apply_cnot(PureState::basis(2, 0b00), 0, 1) == PureState::basis(2, 0b00));
  CHECK(apply_cnot(PureState::basis(2, 0b01), 0, 1) == PureState::basis(2, 0b01));
  CHECK(apply_cnot(PureState::basis(2, 0b10), 0, 1) == PureState::basis(2, 0b11));
  CHECK(apply_cnot(PureState::basis(2, 0b11), 0, 1) == PureState::basis(2, 0b10));
}

TEST_CASE("kernels agree with dense gate matrices") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 30; ++i) {
      const PureState s = oracle_test::random_state(rng, n);
      for (int t = 0; t < n; ++t) {
        const double th = angle(rng);
        CHECK(oracle_test::max_diff(oracle_test::apply_dense(oracle_test::dense_rotation(n, t, th), s),
                                    apply_rotation(s, t, th)) < 1e-14);
        for (int c = 0; c < n; ++c) {
          if (c == t) continue;
          CHECK(oracle_test::max_diff(oracle_test::apply_dense(oracle_test::dense_cnot(n, c, t), s),
                                      apply_cnot(s, c, t)) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("gate properties on random states") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (int i = 0; i < 100; ++i) {
    const PureState s = oracle_test::random_state(rng, 3);
    const double a = angle(rng);
    const double b = angle(rng);

    CHECK(apply_cnot(apply_cnot(s, 0, 2), 0, 2) == s);
    CHECK(std::abs(apply_rotation(s, 1, a).norm_squared() - 1.0) < 1e-14);
    CHECK(max_abs_diff(apply_rotation(apply_rotation(s, 2, a), 2, b), apply_rotation(s, 2, a + b)) < 1e-14);

    // Disjoint supports commute.
    CHECK(max_abs_diff(apply_rotation(apply_rotation(s, 0, a), 1, b),
                       apply_rotation(apply_rotation(s, 1, b), 0, a)) < 1e-15);
    CHECK(max_abs_diff(apply_cnot(apply_rotation(s, 0, a), 1, 2),
                       apply_rotation(apply_cnot(s, 1, 2), 0, a)) < 1e-15);

    // Concatenation is associative.
    GateNetwork x, y, z;
    x.rotate(0, a).cnot(0, 1);
    y.cnot(1, 2).rotate(2, b);
    z.cnot(2, 0);
    CHECK((x + y) + z == x + (y + z));
    CHECK(run_network(s, (x + y) + z) == run_network(run_network(run_network(s, x), y), z));
  }
}

TEST_CASE("run_network") {
  const PureState s = PureState::basis(3, 5);
  CHECK(run_network(s, GateNetwork{}) == s);

  GateNetwork bad;
  bad.rotate(0, 0.1).cnot(0, 1).cnot(1, 3);
  try {
    run_network(s, bad);
    FAIL("expected GateError");
  } catch (const GateError& e) {
    CHECK(e.position() == 2);
  }
  GateNetwork self;
  self.cnot(1, 1);
  CHECK_THROWS_AS(validate_network(self, 3), GateError);
  CHECK(required_qubits(bad) == 4);
  CHECK(required_qubits(GateNetwork{}) == 1);
}

TEST_CASE("density_of") {
  CHECK(density_of(PureState(1)).matrix() == Matrix::diagonal({1, 0}));
  const double h = 1.0 / std::sqrt(2.0);
  const Matrix plus = density_of(PureState{h, h}).matrix();
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) CHECK(std::abs(plus(r, c) - 0.5) < 1e-15);
  }
}

TEST_CASE("pure state validation") {
  CHECK_THROWS(PureState{1.0, 1.0});
  CHECK_THROWS(PureState{1.0, 0.0, 0.0});
  CHECK_THROWS(PureState(4));
  CHECK_THROWS(PureState::basis(2, 4));
}

TEST_CASE("network text format") {
  const GateNetwork net = parse_network(
      "# preparation\n"
      "R 1 0.39269908169872414\n"
      "\n"
      "CNOT 1 2   # entangle\n"
      "  R 2 -0.1699\n");
  GateNetwork want;
  want.rotate(1, 0.39269908169872414).cnot(1, 2).rotate(2, -0.1699);
  CHECK(net == want);
  CHECK(parse_network(format_network(net)) == net);

  const auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_network(text);
    } catch (const NetworkParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("R 0 1\nH 0\n") == 2);
  CHECK(line_of("R 0 abc\n") == 1);
  CHECK(line_of("\n\nCNOT 0 0\n") == 3);
  CHECK(line_of("CNOT 0\n") == 1);
  CHECK(line_of("R 0 1 2\n") == 1);
  CHECK(line_of("R -1 0.5\n") == 1);
  CHECK(line_of("R 0 45deg\n") == 1);
  CHECK_THROWS(load_network("/nonexistent/net.txt"));
}
