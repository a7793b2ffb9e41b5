#include "qclone/copier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qclone {

namespace {

using std::numbers::pi;

struct Trig {
  double c1, s1, c2, s2, c3, s3;
};

std::array<double, 4> amplitudes_from(const Trig& t) {
  return {t.c1 * t.c2 * t.c3 + t.s1 * t.s2 * t.s3, -t.c1 * t.s2 * t.s3 + t.s1 * t.c2 * t.c3,
          t.c1 * t.c2 * t.s3 - t.s1 * t.s2 * t.c3, t.c1 * t.s2 * t.c3 + t.s1 * t.c2 * t.s3};
}

Trig trig_of(const std::array<double, 3>& x) {
  return {std::cos(x[0]), std::sin(x[0]), std::cos(x[1]), std::sin(x[1]), std::cos(x[2]),
          std::sin(x[2])};
}

// Each amplitude is multilinear in (cos, sin) of every angle, so the partial
// derivative in angle k is the same expression with (c_k, s_k) -> (-s_k, c_k).
std::array<std::array<double, 3>, 4> jacobian(const Trig& t) {
  std::array<std::array<double, 3>, 4> jac{};
  const std::array<Trig, 3> d{Trig{-t.s1, t.c1, t.c2, t.s2, t.c3, t.s3},
                              Trig{t.c1, t.s1, -t.s2, t.c2, t.c3, t.s3},
                              Trig{t.c1, t.s1, t.c2, t.s2, -t.s3, t.c3}};
  for (int k = 0; k < 3; ++k) {
    const auto col = amplitudes_from(d[k]);
    for (int i = 0; i < 4; ++i) jac[i][k] = col[i];
  }
  return jac;
}

std::array<double, 4> residual_vector(const std::array<double, 3>& x,
                                      const PreparationAmplitudes& target) {
  auto r = amplitudes_from(trig_of(x));
  for (int i = 0; i < 4; ++i) r[i] -= target[i];
  return r;
}

double sum_sq(const std::array<double, 4>& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return s;
}

double max_abs(const std::array<double, 4>& r) {
  double m = 0.0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

// Gaussian elimination with partial pivoting on a 3x3 system.
std::optional<std::array<double, 3>> solve3(std::array<std::array<double, 3>, 3> a,
                                            std::array<double, 3> b) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-300) return std::nullopt;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int k = col; k < 3; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::array<double, 3> x{};
  for (int r = 2; r >= 0; --r) {
    double acc = b[r];
    for (int k = r + 1; k < 3; ++k) acc -= a[r][k] * x[k];
    x[r] = acc / a[r][r];
  }
  return x;
}

// Levenberg-Marquardt from one start. Returns the final point.
std::array<double, 3> damped_newton(std::array<double, 3> x, const PreparationAmplitudes& target) {
  constexpr int kMaxIterations = 200;
  double lambda = 1e-3;
  auto r = residual_vector(x, target);
  double f = sum_sq(r);
  for (int iter = 0; iter < kMaxIterations && max_abs(r) > 1e-15; ++iter) {
    const auto jac = jacobian(trig_of(x));
    std::array<std::array<double, 3>, 3> jtj{};
    std::array<double, 3> grad{};
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        for (int row = 0; row < 4; ++row) jtj[i][k] += jac[row][i] * jac[row][k];
      }
      for (int row = 0; row < 4; ++row) grad[i] -= jac[row][i] * r[row];
    }
    auto damped = jtj;
    for (int i = 0; i < 3; ++i) damped[i][i] += lambda * (jtj[i][i] + 1e-12);
    const auto step = solve3(damped, grad);
    if (!step) break;
    std::array<double, 3> trial{x[0] + (*step)[0], x[1] + (*step)[1], x[2] + (*step)[2]};
    const auto trial_r = residual_vector(trial, target);
    const double trial_f = sum_sq(trial_r);
    if (trial_f < f) {
      x = trial;
      r = trial_r;
      f = trial_f;
      lambda = std::max(lambda * 0.1, 1e-15);
    } else {
      lambda *= 10.0;
      if (lambda > 1e10) break;
    }
  }
  return x;
}

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * pi);  // [-pi, pi]
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

Matrix pure_projector(Complex a0, Complex a1) {
  return Matrix::from_rows({{a0 * std::conj(a0), a0 * std::conj(a1)},
                            {a1 * std::conj(a0), a1 * std::conj(a1)}});
}

Complex sandwich(const Matrix& m, Complex v0, Complex v1) {
  const std::array<Complex, 2> v{v0, v1};
  Complex sum = 0.0;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) sum += std::conj(v[r]) * m(r, c) * v[c];
  }
  return sum;
}

}  // namespace

Complex InputQubit::alpha() const { return std::sin(theta) * std::polar(1.0, phi); }
Complex InputQubit::beta() const { return std::cos(theta); }

PureState InputQubit::state() const { return PureState{alpha(), beta()}; }

InputQubit InputQubit::from_amplitudes(Complex alpha, Complex beta, double tolerance) {
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > tolerance) {
    throw std::invalid_argument("amplitudes are not normalized: |alpha|^2 + |beta|^2 = " +
                                std::to_string(norm2));
  }
  const double norm = std::sqrt(norm2);
  const double a = std::abs(alpha) / norm;
  const double b = std::abs(beta) / norm;
  InputQubit q;
  q.theta = std::atan2(a, b);
  if (a == 0.0) {
    q.phi = 0.0;
  } else if (b == 0.0) {
    q.phi = 0.0;  // global phase only
  } else {
    // Remove beta's phase so beta is real and non-negative.
    q.phi = std::arg(alpha * std::conj(beta));
    if (q.phi < 0.0) q.phi += 2.0 * pi;
  }
  return q;
}

PreparationAmplitudes::PreparationAmplitudes(std::array<double, 4> c) : c_(c) {
  double sum = 0.0;
  for (double v : c_) {
    if (!std::isfinite(v)) throw std::invalid_argument("preparation amplitudes must be finite");
    sum += v * v;
  }
  if (std::abs(sum - 1.0) > tol::kStructural) {
    throw std::invalid_argument("preparation amplitudes are not normalized");
  }
}

std::array<double, 4> preparation_amplitudes(const PreparationAngles& angles) {
  return amplitudes_from(trig_of({angles.theta1, angles.theta2, angles.theta3}));
}

double angle_residual(const PreparationAngles& angles, const PreparationAmplitudes& target) {
  return max_abs(residual_vector({angles.theta1, angles.theta2, angles.theta3}, target));
}

AngleSolveError::AngleSolveError(double best_residual, PreparationAngles best)
    : std::runtime_error("no preparation angles found; best residual " +
                         std::to_string(best_residual)),
      best_residual_(best_residual),
      best_(best) {}

PreparationAngles solve_preparation_angles(const PreparationAmplitudes& target) {
  constexpr std::array<double, 4> kLattice{-3.0 * pi / 4.0, -pi / 4.0, pi / 4.0, 3.0 * pi / 4.0};

  std::optional<PreparationAngles> best_solution;
  double best_norm = 0.0;
  PreparationAngles closest{};
  double closest_residual = std::numeric_limits<double>::infinity();

  for (double t1 : kLattice) {
    for (double t3 : kLattice) {
      const auto x = damped_newton({t1, 0.0, t3}, target);
      const PreparationAngles candidate{wrap_angle(x[0]), wrap_angle(x[1]), wrap_angle(x[2])};
      const double res = angle_residual(candidate, target);
      if (res < closest_residual) {
        closest_residual = res;
        closest = candidate;
      }
      if (res > kAngleResidualTolerance) continue;
      const double norm = std::hypot(candidate.theta1, candidate.theta2, candidate.theta3);
      if (!best_solution || norm < best_norm) {
        best_solution = candidate;
        best_norm = norm;
      }
    }
  }
  if (!best_solution) throw AngleSolveError(closest_residual, closest);
  return *best_solution;
}

GateNetwork preparation_network(const PreparationAngles& angles, int a2, int a3) {
  GateNetwork net;
  net.rotate(a2, angles.theta1).cnot(a2, a3).rotate(a3, angles.theta2).cnot(a3, a2).rotate(
      a2, angles.theta3);
  return net;
}

GateNetwork copy_stage_network() {
  GateNetwork net;
  net.cnot(kOriginal, kCopyA).cnot(kOriginal, kCopyB).cnot(kCopyA, kOriginal).cnot(kCopyB,
                                                                                   kOriginal);
  return net;
}

std::string_view to_string(CopyVariant v) {
  return v == CopyVariant::Duplicator ? "duplicator" : "triplicator";
}

std::optional<CopyVariant> parse_variant(std::string_view text) {
  if (text == "duplicator") return CopyVariant::Duplicator;
  if (text == "triplicator") return CopyVariant::Triplicator;
  return std::nullopt;
}

PreparationAngles variant_angles(CopyVariant v) {
  const double theta2 = std::asin(std::sqrt(0.5 - std::sqrt(2.0) / 3.0));
  return {pi / 8.0, v == CopyVariant::Duplicator ? -theta2 : theta2, pi / 8.0};
}

PreparationAmplitudes variant_amplitudes(CopyVariant v) {
  if (v == CopyVariant::Duplicator) {
    const double k = 1.0 / std::sqrt(6.0);
    return PreparationAmplitudes({2.0 * k, k, k, 0.0});
  }
  const double k = 1.0 / std::sqrt(12.0);
  return PreparationAmplitudes({3.0 * k, k, k, k});
}

GateNetwork copier_network(CopyVariant v) {
  return preparation_network(variant_angles(v)) + copy_stage_network();
}

DensityMatrix ideal_density(const InputQubit& input, int n) {
  if (n < 1 || n > 3) throw std::out_of_range("ideal_density: copy count must be 1, 2 or 3");
  const Matrix one = pure_projector(input.alpha(), input.beta());
  Matrix out = one;
  for (int i = 1; i < n; ++i) out = kron(out, one);
  return DensityMatrix(out);
}

ScalingFit fit_scaling(const DensityMatrix& rho_out, const DensityMatrix& rho_id) {
  if (rho_out.dim() != 2 || rho_id.dim() != 2) {
    throw DimensionError("scaling fit needs single-qubit density matrices");
  }
  if (rho_id.purity() < 1.0 - 1e-10) throw std::invalid_argument("ideal state is not pure");
  const Matrix half_identity = 0.5 * Matrix::identity(2);
  const Matrix direction = rho_id.matrix() - half_identity;
  const Matrix offset = rho_out.matrix() - half_identity;
  const double s = (direction * offset).trace().real() / (direction * direction).trace().real();
  return {s, std::sqrt(hs_distance(offset, s * direction))};
}

std::optional<double> scaling_decompose(const DensityMatrix& rho_out,
                                        const DensityMatrix& rho_id) {
  const ScalingFit fit = fit_scaling(rho_out, rho_id);
  if (fit.residual > 1e-10) return std::nullopt;
  return fit.s;
}

FidelitySplit fidelity_split(const DensityMatrix& rho_out, const InputQubit& input) {
  if (rho_out.dim() != 2) throw DimensionError("fidelity_split needs a single-qubit state");
  const Complex a = input.alpha();
  const Complex b = input.beta();
  return {sandwich(rho_out.matrix(), a, b).real(),
          sandwich(rho_out.matrix(), std::conj(b), -std::conj(a)).real()};
}

Distances distances_report(const CopyReport& report) {
  Distances d;
  const DensityMatrix ideal1 = ideal_density(report.input, 1);
  const DensityMatrix ideal2 = ideal_density(report.input, 2);
  for (int q = 0; q < 3; ++q) d.d1[q] = hs_distance(report.qubits[q], ideal1);
  for (int p = 0; p < 3; ++p) d.d2[p] = hs_distance(report.pairs[p], ideal2);
  if (report.variant == CopyVariant::Triplicator) {
    d.d3 = hs_distance(density_of(report.output), ideal_density(report.input, 3));
  }
  return d;
}

CopyReport run_copier(const InputQubit& input, CopyVariant variant) {
  const PureState output = run_network(embed_input(input, 3), copier_network(variant));
  const DensityMatrix full = density_of(output);
  CopyReport report{
      .variant = variant,
      .input = input,
      .output = output,
      .qubits = {partial_trace(full, {kOriginal}), partial_trace(full, {kCopyA}),
                 partial_trace(full, {kCopyB})},
      .pairs = {partial_trace(full, {kPairs[0][0], kPairs[0][1]}),
                partial_trace(full, {kPairs[1][0], kPairs[1][1]}),
                partial_trace(full, {kPairs[2][0], kPairs[2][1]})},
      .scaling = {},
      .fidelity = {},
      .distances = {},
  };
  const DensityMatrix ideal1 = ideal_density(input, 1);
  for (int q = 0; q < 3; ++q) {
    report.scaling[q] = scaling_decompose(report.qubits[q], ideal1);
    report.fidelity[q] = fidelity_split(report.qubits[q], input);
  }
  report.distances = distances_report(report);
  return report;
}

TransposeCheck original_transpose_check(const CopyReport& report) {
  if (report.variant != CopyVariant::Duplicator) {
    throw std::invalid_argument("the transpose law holds for the duplicator only");
  }
  const Matrix rho_in = ideal_density(report.input, 1).matrix();
  const Matrix predicted = (1.0 / 3.0) * rho_in.transpose() + (1.0 / 3.0) * Matrix::identity(2);
  const double residual = max_abs_diff(report.qubits[kOriginal].matrix(), predicted);
  return {residual <= 1e-10, residual};
}

std::array<Complex, 2> transposed_expectation(const Matrix& rho, const Matrix& observable) {
  return {(rho * observable).trace(), (rho.transpose() * observable.transpose()).trace()};
}

PureState embed_input(const InputQubit& input, int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw DimensionError("register must hold 1-3 qubits");
  }
  std::array<Complex, kMaxDim> amps{};
  amps[0] = input.alpha();
  amps[std::size_t{1} << (num_qubits - 1)] = input.beta();
  return PureState(std::span<const Complex>(amps.data(), std::size_t{1} << num_qubits));
}

StateAnalysis analyze_output(const PureState& output, const InputQubit& input) {
  const DensityMatrix full = density_of(output);
  const int n = output.num_qubits();
  const DensityMatrix ideal1 = ideal_density(input, 1);
  StateAnalysis analysis{output, {}, {}, std::nullopt};
  for (int q = 0; q < n; ++q) {
    const DensityMatrix rho = n == 1 ? full : partial_trace(full, {q});
    analysis.qubits.push_back({q, rho, hs_distance(rho, ideal1), scaling_decompose(rho, ideal1),
                               fidelity_split(rho, input)});
  }
  if (n >= 2) {
    const DensityMatrix ideal2 = ideal_density(input, 2);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const DensityMatrix rho = n == 2 ? full : partial_trace(full, {i, j});
        analysis.pairs.push_back({i, j, rho, hs_distance(rho, ideal2)});
      }
    }
  }
  if (n == 3) analysis.d3 = hs_distance(full, ideal_density(input, 3));
  return analysis;
}

}  // namespace qclone
