#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qclone/gates.hpp"
#include "qclone/linalg.hpp"

namespace qclone {

/// Qubit roles in the three-qubit copier register.
inline constexpr int kOriginal = 0;  // a1
inline constexpr int kCopyA = 1;     // a2
inline constexpr int kCopyB = 2;     // a3

/// The state alpha|0> + beta|1> with alpha = sin(theta) e^{i phi} and
/// beta = cos(theta). Normalized by construction.
struct InputQubit {
  double theta = 0.0;
  double phi = 0.0;

  Complex alpha() const;
  Complex beta() const;
  PureState state() const;

  /// Converts raw amplitudes. The global phase is removed so that beta is
  /// real and non-negative. Throws if |alpha|^2 + |beta|^2 differs from 1 by
  /// more than `tolerance`; smaller deviations are renormalized.
  static InputQubit from_amplitudes(Complex alpha, Complex beta, double tolerance = 1e-9);
};

/// Real amplitudes (C1..C4) of a two-qubit state over |00>,|01>,|10>,|11>.
class PreparationAmplitudes {
 public:
  /// Throws std::invalid_argument unless sum C_i^2 = 1 within 1e-12.
  explicit PreparationAmplitudes(std::array<double, 4> c);
  const std::array<double, 4>& values() const noexcept { return c_; }
  double operator[](std::size_t i) const { return c_[i]; }

 private:
  std::array<double, 4> c_;
};

struct PreparationAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
  friend bool operator==(const PreparationAngles&, const PreparationAngles&) = default;
};

/// Amplitudes produced by the preparation network for the given angles:
///   C1 =  c1 c2 c3 + s1 s2 s3     C2 = -c1 s2 s3 + s1 c2 c3
///   C3 =  c1 c2 s3 - s1 s2 c3     C4 =  c1 s2 c3 + s1 c2 s3
std::array<double, 4> preparation_amplitudes(const PreparationAngles& angles);

/// Largest |C_i(angles) - target_i|.
double angle_residual(const PreparationAngles& angles, const PreparationAmplitudes& target);

class AngleSolveError : public std::runtime_error {
 public:
  AngleSolveError(double best_residual, PreparationAngles best);
  double best_residual() const noexcept { return best_residual_; }
  const PreparationAngles& best_angles() const noexcept { return best_; }

 private:
  double best_residual_;
  PreparationAngles best_;
};

inline constexpr double kAngleResidualTolerance = 1e-10;

/// Solves the angle system for `target`. Runs damped Newton
/// (Levenberg-Marquardt) from 16 lattice starts, keeps every start that
/// converges to residual <= 1e-10, wraps angles to (-pi, pi] and returns the
/// solution with the smallest Euclidean norm. Throws AngleSolveError with the
/// best residual if no start converges.
PreparationAngles solve_preparation_angles(const PreparationAmplitudes& target);

/// R(theta1) on a2, CNOT a2->a3, R(theta2) on a3, CNOT a3->a2, R(theta3) on
/// a2, in that order. `a2`/`a3` default to their positions in the copier
/// register; pass (0, 1) to run the stage on a bare two-qubit register.
GateNetwork preparation_network(const PreparationAngles& angles, int a2 = kCopyA,
                                int a3 = kCopyB);

/// CNOT a1->a2, CNOT a1->a3, CNOT a2->a1, CNOT a3->a1 (first applied first).
GateNetwork copy_stage_network();

enum class CopyVariant { Duplicator, Triplicator };

std::string_view to_string(CopyVariant v);
std::optional<CopyVariant> parse_variant(std::string_view text);

/// Closed-form preparation angles: theta1 = theta3 = pi/8 and
/// theta2 = -/+ arcsin(sqrt(1/2 - sqrt(2)/3)) for the duplicator/triplicator.
PreparationAngles variant_angles(CopyVariant v);

/// (2,1,1,0)/sqrt(6) for the duplicator, (3,1,1,1)/sqrt(12) for the
/// triplicator.
PreparationAmplitudes variant_amplitudes(CopyVariant v);

/// Full register network: preparation followed by the copy stage.
GateNetwork copier_network(CopyVariant v);

struct FidelitySplit {
  double ideal = 0.0;       // <psi|rho|psi>
  double orthogonal = 0.0;  // <psi_perp|rho|psi_perp>
};

struct Distances {
  std::array<double, 3> d1{};  // per qubit a1, a2, a3
  std::array<double, 3> d2{};  // per pair, ordered as kPairs
  std::optional<double> d3;    // triplicator only
};

/// Pair ordering used throughout reports: (a2,a3), (a1,a2), (a1,a3).
inline constexpr std::array<std::array<int, 2>, 3> kPairs{{{kCopyA, kCopyB},
                                                           {kOriginal, kCopyA},
                                                           {kOriginal, kCopyB}}};

struct CopyReport {
  CopyVariant variant;
  InputQubit input;
  PureState output;
  std::array<DensityMatrix, 3> qubits;  // a1, a2, a3
  std::array<DensityMatrix, 3> pairs;   // ordered as kPairs
  std::array<std::optional<double>, 3> scaling;
  std::array<FidelitySplit, 3> fidelity;
  Distances distances;
};

/// (|psi><psi|)^{(x) n} for n in {1, 2, 3}.
DensityMatrix ideal_density(const InputQubit& input, int n);

struct ScalingFit {
  double s = 0.0;
  double residual = 0.0;  // Hilbert-Schmidt norm of rho_out - fitted form
};

/// Least-squares fit of rho_out ~ s rho_id + (1 - s)/2 I. Both operands must
/// be single-qubit; rho_id must be pure (Tr rho^2 >= 1 - 1e-10).
ScalingFit fit_scaling(const DensityMatrix& rho_out, const DensityMatrix& rho_id);

/// The fitted s when the scaled form reproduces rho_out (residual <= 1e-10),
/// otherwise nullopt.
std::optional<double> scaling_decompose(const DensityMatrix& rho_out, const DensityMatrix& rho_id);

FidelitySplit fidelity_split(const DensityMatrix& rho_out, const InputQubit& input);

Distances distances_report(const CopyReport& report);

CopyReport run_copier(const InputQubit& input, CopyVariant variant);

struct TransposeCheck {
  bool holds = false;
  double residual = 0.0;  // max entry deviation
};

/// Compares the original qubit's output with (1/3) rho_in^T + (1/3) I, the
/// transpose taken in the computational basis. Tolerance 1e-10. Duplicator
/// reports only; anything else throws std::invalid_argument.
TransposeCheck original_transpose_check(const CopyReport& report);

/// The two sides of Tr(rho A) = Tr(rho^T A^T), for checking that measuring
/// A^T on a transposed state recovers the expectation of A.
std::array<Complex, 2> transposed_expectation(const Matrix& rho, const Matrix& observable);

/// Analysis of an arbitrary 1-3 qubit output against copies of `input`,
/// used for user-supplied networks.
struct QubitAnalysis {
  int qubit;
  DensityMatrix rho;
  double d1;
  std::optional<double> scaling;
  FidelitySplit fidelity;
};

struct PairAnalysis {
  int first;
  int second;
  DensityMatrix rho;
  double d2;
};

struct StateAnalysis {
  PureState output;
  std::vector<QubitAnalysis> qubits;
  std::vector<PairAnalysis> pairs;  // all i < j
  std::optional<double> d3;         // three-qubit registers only
};

StateAnalysis analyze_output(const PureState& output, const InputQubit& input);

/// Register with a1 in the input state and every other qubit in |0>.
PureState embed_input(const InputQubit& input, int num_qubits);

}  // namespace qclone
