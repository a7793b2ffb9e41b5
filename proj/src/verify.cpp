#include "qclone/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "qclone/copier.hpp"
#include "qclone/gates.hpp"
#include "qclone/linalg.hpp"
#include "qclone/oracle/charpoly.hpp"
#include "qclone/report.hpp"
#include "qclone/separability.hpp"

namespace qclone {

namespace {

using std::numbers::pi;

const double kSqrt5 = std::sqrt(5.0);
const double kSqrt17 = std::sqrt(17.0);

// 20 x 20 input grid: theta over [0, pi/2] inclusive, phi over [0, 2 pi).
std::vector<InputQubit> input_grid() {
  std::vector<InputQubit> grid;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) grid.push_back({i * (pi / 2.0) / 19.0, j * 2.0 * pi / 20.0});
  }
  return grid;
}

// Real-amplitude inputs: theta over [0, pi/2], phi in {0, pi}.
std::vector<InputQubit> real_grid() {
  std::vector<InputQubit> grid;
  for (int i = 0; i < 20; ++i) {
    for (double phi : {0.0, pi}) grid.push_back({i * (pi / 2.0) / 19.0, phi});
  }
  return grid;
}

double spectrum_error(std::span<const double> got, std::array<double, 4> want) {
  std::sort(want.begin(), want.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
  return worst;
}

// Closed-form single-qubit triplicator output, written in the descending
// basis {|1>, |0>} and converted to the internal order.
Matrix triplicator_qubit_closed_form(const InputQubit& in) {
  const Complex a = in.alpha();
  const Complex b = in.beta();
  const Complex off = 3.0 * std::conj(a) * b + a * std::conj(b);
  const Matrix descending = Matrix::from_rows(
      {{4.0 * std::norm(b) + 1.0, off}, {std::conj(off), 4.0 * std::norm(a) + 1.0}});
  return reverse_basis((1.0 / 6.0) * descending);
}

// Closed-form two-qubit triplicator output (descending basis {11,10,01,00}).
Matrix triplicator_pair_closed_form(const InputQubit& in) {
  const Complex a = in.alpha();
  const Complex b = in.beta();
  const Complex u = 3.0 * std::conj(a) * b + a * std::conj(b);
  const Complex l = std::conj(u);
  const Matrix descending = Matrix::from_rows({{8.0 * std::norm(b) + 1.0, u, u, 3.0},
                                               {l, 1.0, 1.0, u},
                                               {l, 1.0, 1.0, u},
                                               {3.0, l, l, 8.0 * std::norm(a) + 1.0}});
  return reverse_basis((1.0 / 12.0) * descending);
}

// Triplicator output amplitudes over a1 a2 a3.
PureState triplicator_closed_form(const InputQubit& in) {
  const Complex a = in.alpha() / std::sqrt(12.0);
  const Complex b = in.beta() / std::sqrt(12.0);
  return PureState{3.0 * a, b, b, a, b, a, a, 3.0 * b};
}

double phase_weight(const InputQubit& in) {
  return std::norm(in.alpha()) * std::norm(in.beta()) * std::pow(std::sin(in.phi), 2);
}

Matrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal;
  Matrix g(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  }
  return 0.5 * (g + g.adjoint());
}

DensityMatrix random_density(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal;
  Matrix g(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  }
  Matrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  // Clean rounding so the Hermitian check sees an exactly Hermitian matrix.
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

PureState random_state(std::mt19937_64& rng, int num_qubits) {
  std::normal_distribution<double> normal;
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = Complex(normal(rng), normal(rng));
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return PureState(std::span<const Complex>(amps));
}

class Recorder {
 public:
  Recorder(const VerifyOptions& options, int criterion) : options_(options), criterion_(criterion) {}

  void numeric(std::string id, std::string group, std::string reference, double expected,
               double observed, double residual, double tolerance, std::string detail = {}) {
    if (!selected(group)) return;
    const double tol = options_.tolerance.value_or(tolerance);
    results_.push_back({std::move(id), criterion_, std::move(group), std::move(reference), expected,
                        observed, residual, tol, true, residual <= tol, std::move(detail)});
  }

  /// Boolean check: `violations` must be zero.
  void boolean(std::string id, std::string group, std::string reference, int violations,
               std::string detail = {}) {
    if (!selected(group)) return;
    results_.push_back({std::move(id), criterion_, std::move(group), std::move(reference), 0.0,
                        static_cast<double>(violations), static_cast<double>(violations), 0.0,
                        false, violations == 0, std::move(detail)});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  bool selected(const std::string& group) const {
    return options_.only.empty() ||
           std::find(options_.only.begin(), options_.only.end(), group) != options_.only.end();
  }

  const VerifyOptions& options_;
  int criterion_;
  std::vector<CheckResult> results_;
};

// Worst |f(x) - expected| over `grid`, plus the observed value there.
template <typename Input, typename F>
std::pair<double, double> worst_over(const std::vector<Input>& grid, double expected, F f) {
  double worst = -1.0;
  double at = expected;
  for (const auto& x : grid) {
    const double v = f(x);
    if (std::abs(v - expected) > worst) {
      worst = std::abs(v - expected);
      at = v;
    }
  }
  return {worst, at};
}

void prep_state(Recorder& rec) {
  const PureState out = run_network(PureState(2), preparation_network(variant_angles(CopyVariant::Duplicator), 0, 1));
  const double k = 1.0 / std::sqrt(6.0);
  const double err = max_abs_diff(out, PureState{2.0 * k, k, k, 0.0});
  rec.numeric("prep-duplicator", "prep", "preparation network gives (2|00>+|01>+|10>)/sqrt6", 0.0,
              err, err, 1e-12);
}

void basis_copy(Recorder& rec) {
  const GateNetwork net = copier_network(CopyVariant::Duplicator);
  const double r23 = std::sqrt(2.0 / 3.0);
  const double r6 = 1.0 / std::sqrt(6.0);  // (1/sqrt3)(1/sqrt2)
  // |0>|00> -> sqrt(2/3)|000> + (1/sqrt3)|1>|+>
  const PureState want0{r23, 0.0, 0.0, 0.0, 0.0, r6, r6, 0.0};
  // |1>|00> -> sqrt(2/3)|111> + (1/sqrt3)|0>|+>
  const PureState want1{0.0, r6, r6, 0.0, 0.0, 0.0, 0.0, r23};
  const double e0 = max_abs_diff(run_network(PureState::basis(3, 0b000), net), want0);
  const double e1 = max_abs_diff(run_network(PureState::basis(3, 0b100), net), want1);
  rec.numeric("basis-copy-0", "basis", "|0> input: sqrt(2/3)|0>|00> + (1/sqrt3)|1>|+>", 0.0, e0, e0,
              1e-12);
  rec.numeric("basis-copy-1", "basis", "|1> input: sqrt(2/3)|1>|11> + (1/sqrt3)|0>|+>", 0.0, e1, e1,
              1e-12);
}

void copy_fidelity(Recorder& rec) {
  const auto grid = input_grid();
  for (int q : {kCopyA, kCopyB}) {
    const std::string name = q == kCopyA ? "a2" : "a3";
    std::vector<CopyReport> reports;
    auto [ideal_err, ideal_at] = worst_over(grid, 5.0 / 6.0, [&](const InputQubit& in) {
      return run_copier(in, CopyVariant::Duplicator).fidelity[q].ideal;
    });
    auto [orth_err, orth_at] = worst_over(grid, 1.0 / 6.0, [&](const InputQubit& in) {
      return run_copier(in, CopyVariant::Duplicator).fidelity[q].orthogonal;
    });
    rec.numeric("fidelity-ideal-" + name, "duplicator", "copy " + name + " weight on |psi> is 5/6",
                5.0 / 6.0, ideal_at, ideal_err, 1e-10, "20x20 input grid");
    rec.numeric("fidelity-orth-" + name, "duplicator",
                "copy " + name + " weight on |psi_perp> is 1/6", 1.0 / 6.0, orth_at, orth_err, 1e-10,
                "20x20 input grid");
  }
}

void scaling(Recorder& rec) {
  const auto grid = input_grid();
  double s_err = 0.0;
  double s_at = 2.0 / 3.0;
  double worst_residual = 0.0;
  for (const auto& in : grid) {
    const CopyReport r = run_copier(in, CopyVariant::Duplicator);
    const DensityMatrix ideal = ideal_density(in, 1);
    for (int q : {kCopyA, kCopyB}) {
      const ScalingFit fit = fit_scaling(r.qubits[q], ideal);
      worst_residual = std::max(worst_residual, fit.residual);
      if (std::abs(fit.s - 2.0 / 3.0) > s_err) {
        s_err = std::abs(fit.s - 2.0 / 3.0);
        s_at = fit.s;
      }
    }
  }
  rec.numeric("scaling-factor", "duplicator", "copies have scaled form with s = 2/3", 2.0 / 3.0, s_at,
              s_err, 1e-10, "both copies, 20x20 grid");
  rec.numeric("scaling-residual", "duplicator", "scaled-form fit residual", 0.0, worst_residual,
              worst_residual, 1e-10, "both copies, 20x20 grid");
}

void constant_distances(Recorder& rec) {
  const auto grid = input_grid();
  for (int q : {kCopyA, kCopyB}) {
    const std::string name = q == kCopyA ? "a2" : "a3";
    auto [err, at] = worst_over(grid, 1.0 / 18.0, [&](const InputQubit& in) {
      return run_copier(in, CopyVariant::Duplicator).distances.d1[q];
    });
    rec.numeric("d1-" + name, "duplicator", "d1 of copy " + name + " is 1/18", 1.0 / 18.0, at, err,
                1e-10, "20x20 input grid");
  }
  auto [err2, at2] = worst_over(grid, 2.0 / 9.0, [&](const InputQubit& in) {
    return run_copier(in, CopyVariant::Duplicator).distances.d2[0];
  });
  rec.numeric("d2-a2a3", "duplicator", "d2 of the copy pair is 2/9", 2.0 / 9.0, at2, err2, 1e-10,
              "20x20 input grid");
  auto [eq_err, eq_at] = worst_over(grid, 0.0, [&](const InputQubit& in) {
    const CopyReport r = run_copier(in, CopyVariant::Duplicator);
    return max_abs_diff(r.qubits[kCopyA].matrix(), r.qubits[kCopyB].matrix());
  });
  rec.numeric("copies-identical", "duplicator", "rho_a2 equals rho_a3", 0.0, eq_at, eq_err, 1e-12,
              "20x20 input grid");
}

void original_law(Recorder& rec) {
  const auto grid = input_grid();
  auto [t_err, t_at] = worst_over(grid, 0.0, [&](const InputQubit& in) {
    return original_transpose_check(run_copier(in, CopyVariant::Duplicator)).residual;
  });
  rec.numeric("original-transpose", "original", "rho_a1 = rho_in^T/3 + I/3", 0.0, t_at, t_err, 1e-10,
              "20x20 input grid");
  double d_err = 0.0;
  double d_at = 0.0;
  double d_want = 0.0;
  for (const auto& in : grid) {
    const double want = (2.0 / 9.0) * (1.0 + 12.0 * phase_weight(in));
    const double got = run_copier(in, CopyVariant::Duplicator).distances.d1[kOriginal];
    if (std::abs(got - want) > d_err || d_err == 0.0) {
      d_err = std::max(d_err, std::abs(got - want));
      d_at = got;
      d_want = want;
    }
  }
  rec.numeric("original-d1", "original", "d1(a1) = (2/9)(1 + 12|a|^2|b|^2 sin^2 phi)", d_want, d_at,
              d_err, 1e-10, "20x20 input grid");
}

void duplicator_ppt(Recorder& rec) {
  const auto grid = input_grid();
  const std::array<double, 4> want{(2.0 - kSqrt5) / 6.0, 1.0 / 6.0, 1.0 / 6.0, (2.0 + kSqrt5) / 6.0};
  double worst = 0.0;
  double e_at = 0.0;
  int not_entangled = 0;
  double pair_err = 0.0;
  for (const auto& in : grid) {
    const CopyReport r = run_copier(in, CopyVariant::Duplicator);
    const PptReport ppt = ppt_verdict(r.pairs[0]);
    const double err = spectrum_error(ppt.spectrum, want);
    if (err >= worst) {
      worst = err;
      e_at = ppt.min_eigenvalue;
    }
    if (!ppt.inseparable()) ++not_entangled;

    // Copy-pair matrix and its partial transpose in the descending basis.
    const Complex a = in.alpha();
    const Complex b = in.beta();
    const Complex u = 2.0 * std::conj(a) * b;
    const Complex l = 2.0 * a * std::conj(b);
    const Matrix pair = reverse_basis((1.0 / 6.0) * Matrix::from_rows({{4.0 * std::norm(b), u, u, 0.0},
                                                                      {l, 1.0, 1.0, u},
                                                                      {l, 1.0, 1.0, u},
                                                                      {0.0, l, l, 4.0 * std::norm(a)}}));
    const Matrix transposed = reverse_basis((1.0 / 6.0) * Matrix::from_rows({{4.0 * std::norm(b), l, u, 1.0},
                                                                            {u, 1.0, 0.0, u},
                                                                            {l, 0.0, 1.0, l},
                                                                            {1.0, l, u, 4.0 * std::norm(a)}}));
    pair_err = std::max({pair_err, max_abs_diff(r.pairs[0].matrix(), pair),
                         max_abs_diff(partial_transpose(r.pairs[0]), transposed)});
  }
  rec.numeric("dup-pair-matrix", "ppt", "copy pair and its partial transpose match closed form", 0.0,
              pair_err, pair_err, 1e-12, "20x20 input grid");
  rec.numeric("dup-ppt-spectrum", "ppt", "spectrum {(2-sqrt5)/6, 1/6, 1/6, (2+sqrt5)/6}", want[0],
              e_at, worst, 1e-10, "20x20 input grid");
  rec.boolean("dup-inseparable", "ppt", "copy pair inseparable for every input", not_entangled,
              std::to_string(grid.size()) + " inputs");
}

void triplicator_prep(Recorder& rec) {
  const PureState prep =
      run_network(PureState(2), preparation_network(variant_angles(CopyVariant::Triplicator), 0, 1));
  const double k = 1.0 / std::sqrt(12.0);
  const double e = max_abs_diff(prep, PureState{3.0 * k, k, k, k});
  rec.numeric("prep-triplicator", "triplicator", "preparation gives (3|00>+|01>+|10>+|11>)/sqrt12",
              0.0, e, e, 1e-12);
  double worst = 0.0;
  for (double theta : {0.0, pi / 8.0, pi / 4.0}) {
    for (double phi : {0.0, 0.7}) {
      const InputQubit in{theta, phi};
      worst = std::max(worst, max_abs_diff(run_copier(in, CopyVariant::Triplicator).output,
                                           triplicator_closed_form(in)));
    }
  }
  rec.numeric("triplicator-output", "triplicator", "output amplitudes 3a,b,b,a,b,a,a,3b over sqrt12",
              0.0, worst, worst, 1e-12, "theta in {0, pi/8, pi/4}, phi in {0, 0.7}");
}

void triplicator_real(Recorder& rec) {
  const auto grid = real_grid();
  const std::array<double, 4> want{-1.0 / 6.0, (5.0 - kSqrt17) / 12.0, 1.0 / 3.0,
                                   (5.0 + kSqrt17) / 12.0};
  double equal_err = 0.0;
  double s_err = 0.0;
  int s_missing = 0;
  double pair_err = 0.0;
  double d1_err = 0.0;
  double d2_err = 0.0;
  double d3_err = 0.0;
  double spec_err = 0.0;
  for (const auto& in : grid) {
    const CopyReport r = run_copier(in, CopyVariant::Triplicator);
    const Matrix pair_want = triplicator_pair_closed_form(in);
    for (int q = 0; q < 3; ++q) {
      equal_err = std::max(equal_err, max_abs_diff(r.qubits[q].matrix(), r.qubits[0].matrix()));
      if (!r.scaling[q]) {
        ++s_missing;
      } else {
        s_err = std::max(s_err, std::abs(*r.scaling[q] - 2.0 / 3.0));
      }
      d1_err = std::max(d1_err, std::abs(r.distances.d1[q] - 1.0 / 18.0));
      d2_err = std::max(d2_err, std::abs(r.distances.d2[q] - 2.0 / 9.0));
      pair_err = std::max(pair_err, max_abs_diff(r.pairs[q].matrix(), pair_want));
      spec_err = std::max(spec_err, spectrum_error(ppt_verdict(r.pairs[q]).spectrum, want));
    }
    d3_err = std::max(d3_err, std::abs(*r.distances.d3 - 0.5));
  }
  const std::string where = "theta grid x phi in {0, pi}";
  rec.numeric("trip-real-identical", "triplicator", "three single-qubit outputs equal", 0.0, equal_err,
              equal_err, 1e-10, where);
  rec.boolean("trip-real-scaled", "triplicator", "every output has a scaled form", s_missing, where);
  rec.numeric("trip-real-s", "triplicator", "scaling factor s = 2/3", 2.0 / 3.0, 2.0 / 3.0 + s_err,
              s_err, 1e-10, where);
  rec.numeric("trip-real-pairs", "triplicator", "all pairs match the closed-form pair matrix", 0.0,
              pair_err, pair_err, 1e-10, where);
  rec.numeric("trip-real-d1", "triplicator", "d1 = 1/18", 1.0 / 18.0, 1.0 / 18.0 + d1_err, d1_err,
              1e-10, where);
  rec.numeric("trip-real-d2", "triplicator", "d2 = 2/9", 2.0 / 9.0, 2.0 / 9.0 + d2_err, d2_err, 1e-10,
              where);
  rec.numeric("trip-real-d3", "triplicator", "d3 = 1/2", 0.5, 0.5 + d3_err, d3_err, 1e-10, where);
  rec.numeric("trip-ppt-spectrum", "ppt", "spectrum {-1/6, (5-sqrt17)/12, 1/3, (5+sqrt17)/12}",
              want[0], want[0] + spec_err, spec_err, 1e-10, where);
}

void triplicator_complex(Recorder& rec) {
  const auto grid = input_grid();
  double rho_err = 0.0;
  double d1_err = 0.0;
  double d2_err = 0.0;
  double d3_err = 0.0;
  int scaled_when_should_not = 0;
  int inseparable_misses = 0;
  for (const auto& in : grid) {
    const CopyReport r = run_copier(in, CopyVariant::Triplicator);
    const Matrix want = triplicator_qubit_closed_form(in);
    const double w = phase_weight(in);
    for (int q = 0; q < 3; ++q) {
      rho_err = std::max(rho_err, max_abs_diff(r.qubits[q].matrix(), want));
      d1_err = std::max(d1_err, std::abs(r.distances.d1[q] - (1.0 + 12.0 * w) / 18.0));
      d2_err = std::max(d2_err, std::abs(r.distances.d2[q] - (2.0 / 9.0) * (1.0 + 12.0 * w)));
      if (w > 1e-6 && r.scaling[q]) ++scaled_when_should_not;
      if (!ppt_verdict(r.pairs[q]).inseparable()) ++inseparable_misses;
    }
    d3_err = std::max(d3_err, std::abs(*r.distances.d3 - 0.5 * (1.0 + 12.0 * w)));
  }
  const std::string where = "20x20 input grid";
  rec.numeric("trip-complex-rho", "triplicator", "single-qubit outputs match closed form", 0.0,
              rho_err, rho_err, 1e-10, where);
  rec.numeric("trip-complex-d1", "triplicator", "d1 = (1/18)(1 + 12|a|^2|b|^2 sin^2 phi)", 0.0, d1_err,
              d1_err, 1e-10, where);
  rec.numeric("trip-complex-d2", "triplicator", "d2 = (2/9)(1 + 12|a|^2|b|^2 sin^2 phi)", 0.0, d2_err,
              d2_err, 1e-10, where);
  rec.numeric("trip-complex-d3", "triplicator", "d3 = (1/2)(1 + 12|a|^2|b|^2 sin^2 phi)", 0.0, d3_err,
              d3_err, 1e-10, where);
  rec.boolean("trip-complex-unscaled", "triplicator",
              "no scaled form when |a|^2|b|^2 sin^2 phi > 1e-6", scaled_when_should_not, where);
  rec.boolean("trip-complex-inseparable", "ppt", "all triplicator pairs inseparable",
              inseparable_misses, where);
}

void negativity_bound(Recorder& rec) {
  double worst_excess = -1.0;
  double e_at = 0.0;
  double ebar_at = 0.0;
  int violations = 0;
  for (int i = 0; i < 50; ++i) {
    const BoundCheck c = negativity_bound_check(i * (pi / 2.0) / 49.0);
    if (!c.satisfied) ++violations;
    if (c.e - c.ebar > worst_excess) {
      worst_excess = c.e - c.ebar;
      e_at = c.e;
      ebar_at = c.ebar;
    }
  }
  rec.boolean("bound-holds", "bound", "E <= Ebar + 1e-9 at phi = pi/2", violations,
              "50 theta values; worst E - Ebar = " + format_number(worst_excess, 3));
  rec.numeric("bound-excess", "bound", "max(E - Ebar) over theta", ebar_at, e_at,
              std::max(worst_excess, 0.0), 1e-9, "50 theta values");
  const BoundCheck basis = negativity_bound_check(0.0);
  rec.numeric("bound-gap-basis", "bound", "|E - Ebar| at |alpha| = 0", basis.ebar, basis.e,
              std::abs(basis.gap), 1e-9);

  std::vector<double> thetas;
  for (int i = 0; i < 10; ++i) thetas.push_back(i * (pi / 2.0) / 9.0);
  std::vector<double> phis;
  for (int j = 0; j < 100; ++j) phis.push_back(j * 2.0 * pi / 100.0);
  const CorrelationTable table = entanglement_distance_correlation(thetas, phis);
  rec.numeric("correlation-real-E", "bound", "E = -1/6 at phi in {0, pi} for every |alpha|",
              -1.0 / 6.0, -1.0 / 6.0 + table.real_input_deviation, table.real_input_deviation, 1e-10,
              "10 theta x 100 phi");
  double above = 0.0;
  for (const auto& row : table.rows) above = std::max(above, row.e + 1.0 / 6.0);
  rec.numeric("correlation-max-E", "bound", "E never exceeds -1/6", -1.0 / 6.0, -1.0 / 6.0 + above,
              above, 1e-10, "10 theta x 100 phi");
  rec.boolean("correlation-min-at-quarter", "bound", "E is smallest at phi = pi/2 (or 3pi/2)",
              table.minimum_at_quarter_turn ? 0 : 1, "10 theta x 100 phi");
}

void angle_solver(Recorder& rec) {
  for (CopyVariant v : {CopyVariant::Duplicator, CopyVariant::Triplicator}) {
    const PreparationAmplitudes target = variant_amplitudes(v);
    const PreparationAngles got = solve_preparation_angles(target);
    const PreparationAngles want = variant_angles(v);
    const double diff = std::max({std::abs(got.theta1 - want.theta1), std::abs(got.theta2 - want.theta2),
                                  std::abs(got.theta3 - want.theta3)});
    const std::string name(to_string(v));
    rec.numeric("solver-angles-" + name, "solver", name + " angles pi/8, -/+arcsin(...), pi/8", 0.0,
                diff, diff, 1e-10);
    const double res = angle_residual(got, target);
    rec.numeric("solver-residual-" + name, "solver", name + " angle-system residual", 0.0, res, res,
                1e-10);
  }
  std::mt19937_64 rng(20260101);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  int solved = 0;
  for (int i = 0; i < 100; ++i) {
    std::array<double, 4> c{};
    double norm = 0.0;
    for (double& x : c) {
      x = normal(rng);
      norm += x * x;
    }
    for (double& x : c) x /= std::sqrt(norm);
    const PreparationAmplitudes target(c);
    try {
      worst = std::max(worst, angle_residual(solve_preparation_angles(target), target));
      ++solved;
    } catch (const AngleSolveError&) {
      // Unsolved targets return nothing, so there is no residual to bound.
    }
  }
  rec.numeric("solver-random", "solver", "residual of every returned solution", 0.0, worst, worst,
              1e-10, std::to_string(solved) + "/100 random targets solved");
}

void property_suites(Recorder& rec) {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> angle(-pi, pi);

  double involution = 0.0;
  double rotation_inverse = 0.0;
  double commute = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PureState s = random_state(rng, 3);
    for (int c = 0; c < 3; ++c) {
      for (int t = 0; t < 3; ++t) {
        if (c != t) involution = std::max(involution, max_abs_diff(apply_cnot(apply_cnot(s, c, t), c, t), s));
      }
    }
    const double th = angle(rng);
    const int q = i % 3;
    rotation_inverse =
        std::max(rotation_inverse, max_abs_diff(apply_rotation(apply_rotation(s, q, th), q, -th), s));
    // Rotation on qubit 0 against a CNOT on qubits 1, 2.
    GateNetwork ab;
    ab.rotate(0, th).cnot(1, 2);
    GateNetwork ba;
    ba.cnot(1, 2).rotate(0, th);
    commute = std::max(commute, max_abs_diff(run_network(s, ab), run_network(s, ba)));
  }
  rec.numeric("prop-cnot-involution", "properties", "CNOT applied twice is the identity", 0.0,
              involution, involution, 1e-12, "100 random states, all 6 qubit pairs");
  rec.numeric("prop-rotation-inverse", "properties", "R(theta) then R(-theta) is the identity", 0.0,
              rotation_inverse, rotation_inverse, 1e-12, "100 random states");
  rec.numeric("prop-disjoint-commute", "properties", "gates on disjoint qubits commute", 0.0, commute,
              commute, 1e-12, "100 random states");

  double pt_involution = 0.0;
  double trace_err = 0.0;
  double pt_sum_err = 0.0;
  int invalid_reductions = 0;
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho2 = random_density(rng, 4);
    for (int sub : {0, 1}) {
      pt_involution = std::max(
          pt_involution, max_abs_diff(partial_transpose(partial_transpose(rho2, sub), sub), rho2.matrix()));
      const auto eig = hermitian_eigenvalues(partial_transpose(rho2, sub));
      double sum = 0.0;
      for (double e : eig) sum += e;
      pt_sum_err = std::max(pt_sum_err, std::abs(sum - 1.0));
    }
    const DensityMatrix rho3 = random_density(rng, 8);
    for (int q = 0; q < 3; ++q) {
      try {
        const DensityMatrix red = partial_trace(rho3, {q});
        trace_err = std::max(trace_err, std::abs(red.matrix().trace() - 1.0));
      } catch (const std::invalid_argument&) {
        ++invalid_reductions;
      }
    }
  }
  rec.numeric("prop-pt-involution", "properties", "partial transpose applied twice is the identity",
              0.0, pt_involution, pt_involution, 0.0, "100 random two-qubit densities");
  rec.numeric("prop-pt-trace", "properties", "partial-transpose spectrum sums to 1", 1.0,
              1.0 + pt_sum_err, pt_sum_err, 1e-10, "100 random two-qubit densities");
  rec.numeric("prop-trace-preserved", "properties", "partial trace preserves trace", 1.0,
              1.0 + trace_err, trace_err, 1e-12, "100 random three-qubit densities");
  rec.boolean("prop-reductions-valid", "properties", "single-qubit reductions are valid densities",
              invalid_reductions, "100 random three-qubit densities");

  double oracle_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Matrix h = random_hermitian(rng, 4);
    const auto jacobi = hermitian_eigenvalues(h);
    const auto reference = oracle::eigenvalues_by_charpoly(h);
    for (std::size_t k = 0; k < 4; ++k) oracle_err = std::max(oracle_err, std::abs(jacobi[k] - reference[k]));
  }
  rec.numeric("prop-eigen-oracle", "properties",
              "Jacobi eigenvalues match characteristic-polynomial roots", 0.0, oracle_err, oracle_err,
              1e-9, "100 random 4x4 Hermitian matrices");
}

struct Criterion {
  int number;
  std::string_view title;
  std::set<std::string> groups;
  std::function<void(Recorder&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "preparation state", {"prep"}, prep_state},
      {2, "basis-state copying", {"basis"}, basis_copy},
      {3, "copy fidelity split", {"duplicator"}, copy_fidelity},
      {4, "scaling factor", {"duplicator"}, scaling},
      {5, "constant distances", {"duplicator"}, constant_distances},
      {6, "original-qubit law", {"original"}, original_law},
      {7, "duplicator PPT spectrum", {"ppt"}, duplicator_ppt},
      {8, "triplicator preparation and output", {"triplicator"}, triplicator_prep},
      {9, "triplicator with real amplitudes", {"triplicator", "ppt"}, triplicator_real},
      {10, "triplicator with complex amplitudes", {"triplicator", "ppt"}, triplicator_complex},
      {11, "negativity bound and correlation", {"bound"}, negativity_bound},
      {12, "angle solver", {"solver"}, angle_solver},
      {13, "property suites", {"properties"}, property_suites},
  };
  return all;
}

}  // namespace

std::size_t VerificationResult::passed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; }));
}

std::vector<std::string> verification_groups() {
  return {"prep", "basis", "duplicator", "original", "ppt", "triplicator", "bound", "solver",
          "properties"};
}

std::string_view criterion_title(int criterion) {
  for (const auto& c : criteria()) {
    if (c.number == criterion) return c.title;
  }
  return "unknown";
}

VerificationResult run_verification(const VerifyOptions& options) {
  for (const auto& g : options.only) {
    const auto groups = verification_groups();
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) {
      throw std::invalid_argument("unknown check group '" + g + "'");
    }
  }
  VerificationResult result;
  for (const auto& c : criteria()) {
    if (options.criterion && *options.criterion != c.number) continue;
    const bool wanted =
        options.only.empty() || std::any_of(options.only.begin(), options.only.end(),
                                            [&](const std::string& g) { return c.groups.count(g) > 0; });
    if (!wanted) continue;
    Recorder rec(options, c.number);
    c.run(rec);
    for (auto& check : rec.take()) result.checks.push_back(std::move(check));
  }
  return result;
}

std::string render_verification_text(const VerificationResult& result) {
  std::ostringstream os;
  int current = 0;
  for (const auto& c : result.checks) {
    if (c.criterion != current) {
      current = c.criterion;
      os << "criterion " << current << ": " << criterion_title(current) << '\n';
    }
    os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.id << " - " << c.reference << '\n';
    if (c.numeric) {
      os << "         expected " << format_number(c.expected, kHumanDigits) << ", observed "
         << format_number(c.observed, kHumanDigits) << ", residual " << format_number(c.residual, 3)
         << " (tolerance " << format_number(c.tolerance, 3) << ")";
    } else {
      os << "         violations " << static_cast<long long>(c.observed);
    }
    if (!c.detail.empty()) os << "; " << c.detail;
    os << '\n';
  }
  os << result.passed() << "/" << result.checks.size() << " checks passed\n";
  return os.str();
}

void write_verification_json(std::ostream& out, const VerificationResult& result,
                             const VerifyOptions& options, const std::string& timestamp) {
  JsonWriter json(out);
  json.begin_object();
  json.key("meta").begin_object();
  json.key("schema_version").value(kSchemaVersion);
  json.key("tool_version").value(kToolVersion);
  json.key("kind").value("verify");
  if (!timestamp.empty()) json.key("generated_at").value(timestamp);
  json.key("tolerance_override").value(options.tolerance);
  json.key("only").begin_array();
  for (const auto& g : options.only) json.value(g);
  json.end_array();
  json.end_object();

  json.key("rows").begin_array();
  for (const auto& c : result.checks) {
    json.begin_object();
    json.key("id").value(c.id);
    json.key("criterion").value(c.criterion);
    json.key("group").value(c.group);
    json.key("reference").value(c.reference);
    json.key("kind").value(c.numeric ? "numeric" : "boolean");
    json.key("expected").value(c.expected);
    json.key("observed").value(c.observed);
    json.key("residual").value(c.residual);
    json.key("tolerance").value(c.tolerance);
    json.key("passed").value(c.passed);
    json.key("detail").value(c.detail);
    json.end_object();
  }
  json.end_array();

  json.key("summary").begin_object();
  json.key("total").value(static_cast<long long>(result.checks.size()));
  json.key("passed").value(static_cast<long long>(result.passed()));
  json.key("failed").value(static_cast<long long>(result.failed()));
  json.key("all_passed").value(result.all_passed());
  json.end_object();
  json.end_object();
}

}  // namespace qclone
