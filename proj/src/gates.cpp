#include "qclone/gates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qclone {

namespace {

int qubits_for_size(std::size_t size) {
  switch (size) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default:
      throw DimensionError("state needs 2, 4 or 8 amplitudes, got " + std::to_string(size));
  }
}

std::size_t mask_of(int num_qubits, int qubit) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

void check_qubit(int num_qubits, int qubit, std::size_t position, const char* role) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw GateError(position, "gate " + std::to_string(position) + ": " + role + " qubit " +
                                  std::to_string(qubit) + " out of range for " +
                                  std::to_string(num_qubits) + "-qubit register");
  }
}

void check_gate(const GateOp& gate, int num_qubits, std::size_t position) {
  if (const auto* r = std::get_if<Rotation>(&gate)) {
    check_qubit(num_qubits, r->target, position, "target");
    if (!std::isfinite(r->theta)) {
      throw GateError(position, "gate " + std::to_string(position) + ": angle is not finite");
    }
    return;
  }
  const auto& c = std::get<Cnot>(gate);
  check_qubit(num_qubits, c.control, position, "control");
  check_qubit(num_qubits, c.target, position, "target");
  if (c.control == c.target) {
    throw GateError(position, "gate " + std::to_string(position) + ": control equals target");
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

PureState::PureState(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw DimensionError("register must hold 1-3 qubits, got " + std::to_string(num_qubits));
  }
  amps_[0] = 1.0;
}

PureState::PureState(std::span<const Complex> amplitudes)
    : num_qubits_(qubits_for_size(amplitudes.size())) {
  std::copy(amplitudes.begin(), amplitudes.end(), amps_.begin());
  for (const Complex& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("state has non-finite amplitudes");
    }
  }
  if (std::abs(norm_squared() - 1.0) > tol::kStructural) {
    throw std::invalid_argument("state is not normalized");
  }
}

PureState::PureState(std::initializer_list<Complex> amplitudes)
    : PureState(std::span<const Complex>(amplitudes.begin(), amplitudes.size())) {}

PureState PureState::basis(int num_qubits, std::size_t index) {
  PureState s(num_qubits);
  if (index >= s.size()) throw std::out_of_range("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double PureState::norm_squared() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < size(); ++i) sum += std::norm(amps_[i]);
  return sum;
}

bool operator==(const PureState& a, const PureState& b) {
  return a.num_qubits_ == b.num_qubits_ &&
         std::equal(a.amps_.begin(), a.amps_.begin() + a.size(), b.amps_.begin());
}

double max_abs_diff(const PureState& a, const PureState& b) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionError("max_abs_diff: register size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

PureState apply_rotation(const PureState& state, int target, double theta) {
  check_gate(Rotation{target, theta}, state.num_qubits(), 0);
  PureState out = state;
  const std::size_t mask = mask_of(state.num_qubits(), target);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i & mask) continue;
    const Complex zero = state.amps_[i];
    const Complex one = state.amps_[i | mask];
    out.amps_[i] = c * zero - s * one;
    out.amps_[i | mask] = s * zero + c * one;
  }
  return out;
}

PureState apply_cnot(const PureState& state, int control, int target) {
  check_gate(Cnot{control, target}, state.num_qubits(), 0);
  PureState out = state;
  const std::size_t cmask = mask_of(state.num_qubits(), control);
  const std::size_t tmask = mask_of(state.num_qubits(), target);
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i & cmask) out.amps_[i] = state.amps_[i ^ tmask];
  }
  return out;
}

PureState apply_gate(const PureState& state, const GateOp& gate) {
  return std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Rotation>) {
          return apply_rotation(state, g.target, g.theta);
        } else {
          return apply_cnot(state, g.control, g.target);
        }
      },
      gate);
}

void validate_network(const GateNetwork& net, int num_qubits) {
  for (std::size_t i = 0; i < net.gates.size(); ++i) check_gate(net.gates[i], num_qubits, i);
}

int required_qubits(const GateNetwork& net) {
  int highest = 0;
  for (const auto& gate : net.gates) {
    if (const auto* r = std::get_if<Rotation>(&gate)) {
      highest = std::max(highest, r->target);
    } else {
      const auto& c = std::get<Cnot>(gate);
      highest = std::max({highest, c.control, c.target});
    }
  }
  return highest + 1;
}

PureState run_network(const PureState& state, const GateNetwork& net) {
  validate_network(net, state.num_qubits());
  PureState out = state;
  for (const auto& gate : net.gates) out = apply_gate(out, gate);
  return out;
}

DensityMatrix density_of(const PureState& state) {
  Matrix m(state.size());
  for (std::size_t r = 0; r < state.size(); ++r) {
    for (std::size_t c = 0; c < state.size(); ++c) m(r, c) = state[r] * std::conj(state[c]);
  }
  return DensityMatrix(m);
}

NetworkParseError::NetworkParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

GateNetwork parse_network(std::istream& in) {
  GateNetwork net;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty()) continue;

    std::istringstream fields(line);
    std::string op;
    fields >> op;
    std::string extra;
    if (op == "R") {
      int target = 0;
      std::string theta_text;
      if (!(fields >> target >> theta_text)) {
        throw NetworkParseError(line_no, "expected 'R <qubit> <theta>'");
      }
      std::size_t used = 0;
      double theta = 0.0;
      try {
        theta = std::stod(theta_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != theta_text.size() || !std::isfinite(theta)) {
        throw NetworkParseError(line_no, "invalid angle '" + theta_text + "' (radians expected)");
      }
      if (fields >> extra) throw NetworkParseError(line_no, "unexpected token '" + extra + "'");
      net.rotate(target, theta);
    } else if (op == "CNOT") {
      int control = 0;
      int target = 0;
      if (!(fields >> control >> target)) {
        throw NetworkParseError(line_no, "expected 'CNOT <control> <target>'");
      }
      if (fields >> extra) throw NetworkParseError(line_no, "unexpected token '" + extra + "'");
      if (control == target) throw NetworkParseError(line_no, "control equals target");
      net.cnot(control, target);
    } else {
      throw NetworkParseError(line_no, "unknown gate '" + op + "'");
    }
    const auto& last = net.gates.back();
    const bool negative = std::visit(
        [](const auto& g) {
          if constexpr (std::is_same_v<std::decay_t<decltype(g)>, Rotation>) {
            return g.target < 0;
          } else {
            return g.control < 0 || g.target < 0;
          }
        },
        last);
    if (negative) throw NetworkParseError(line_no, "qubit index must be non-negative");
  }
  return net;
}

GateNetwork parse_network(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_network(in);
}

GateNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open network file '" + path + "'");
  return parse_network(in);
}

std::string format_network(const GateNetwork& net) {
  std::string out;
  char buf[64];
  for (const auto& gate : net.gates) {
    if (const auto* r = std::get_if<Rotation>(&gate)) {
      std::snprintf(buf, sizeof buf, "R %d %.17g\n", r->target, r->theta);
    } else {
      const auto& c = std::get<Cnot>(gate);
      std::snprintf(buf, sizeof buf, "CNOT %d %d\n", c.control, c.target);
    }
    out += buf;
  }
  return out;
}

}  // namespace qclone
