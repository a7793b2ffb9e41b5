#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qclone/linalg.hpp"

namespace qclone {

inline constexpr int kMaxQubits = 3;

/// Register of 1-3 qubits. Amplitude index bits carry qubit 0 (the original
/// a1) as the most significant bit, then a2, then a3.
class PureState {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit PureState(int num_qubits);
  /// Validates the size (2, 4 or 8 amplitudes) and the norm to 1e-12.
  explicit PureState(std::span<const Complex> amplitudes);
  PureState(std::initializer_list<Complex> amplitudes);

  /// Basis state |index> on `num_qubits` qubits.
  static PureState basis(int num_qubits, std::size_t index);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return std::size_t{1} << num_qubits_; }
  std::span<const Complex> amplitudes() const noexcept { return {amps_.data(), size()}; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;

  friend bool operator==(const PureState& a, const PureState& b);

 private:
  friend PureState apply_rotation(const PureState&, int, double);
  friend PureState apply_cnot(const PureState&, int, int);

  PureState() = default;

  int num_qubits_ = 0;
  std::array<Complex, kMaxDim> amps_{};
};

/// Largest amplitude-wise modulus difference.
double max_abs_diff(const PureState& a, const PureState& b);

struct Rotation {
  int target = 0;
  double theta = 0.0;  // radians
  friend bool operator==(const Rotation&, const Rotation&) = default;
};

struct Cnot {
  int control = 0;
  int target = 0;
  friend bool operator==(const Cnot&, const Cnot&) = default;
};

using GateOp = std::variant<Rotation, Cnot>;

/// Gates applied first-to-last.
struct GateNetwork {
  std::vector<GateOp> gates;

  GateNetwork& rotate(int target, double theta) {
    gates.emplace_back(Rotation{target, theta});
    return *this;
  }
  GateNetwork& cnot(int control, int target) {
    gates.emplace_back(Cnot{control, target});
    return *this;
  }
  std::size_t size() const noexcept { return gates.size(); }
  bool empty() const noexcept { return gates.empty(); }

  /// Concatenation: this network followed by `next`.
  friend GateNetwork operator+(GateNetwork first, const GateNetwork& next) {
    first.gates.insert(first.gates.end(), next.gates.begin(), next.gates.end());
    return first;
  }
  friend bool operator==(const GateNetwork&, const GateNetwork&) = default;
};

/// Raised when a gate does not fit the register it runs on. `position` is the
/// zero-based index of the offending gate within its network.
class GateError : public std::out_of_range {
 public:
  GateError(std::size_t position, const std::string& what)
      : std::out_of_range(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Real rotation on `target`:
///   |0> -> cos(theta)|0> + sin(theta)|1>,  |1> -> -sin(theta)|0> + cos(theta)|1>.
PureState apply_rotation(const PureState& state, int target, double theta);

/// Flips `target` on every basis component where `control` is 1.
PureState apply_cnot(const PureState& state, int control, int target);

PureState apply_gate(const PureState& state, const GateOp& gate);

/// Left fold of the gates over `state`. Every gate is validated against the
/// register before anything runs.
PureState run_network(const PureState& state, const GateNetwork& net);

/// Throws GateError for the first gate that does not fit `num_qubits`.
void validate_network(const GateNetwork& net, int num_qubits);

/// Smallest register that holds every qubit the network touches (at least 1).
int required_qubits(const GateNetwork& net);

/// |psi><psi|.
DensityMatrix density_of(const PureState& state);

// Text format, one gate per line:
//   R <qubit> <theta>
//   CNOT <control> <target>
// Qubits are zero-based (0 = a1). Blank lines and text after '#' are ignored.

class NetworkParseError : public std::runtime_error {
 public:
  NetworkParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

GateNetwork parse_network(std::istream& in);
GateNetwork parse_network(std::string_view text);
GateNetwork load_network(const std::string& path);
std::string format_network(const GateNetwork& net);

}  // namespace qclone
