#pragma once

#include <array>
#include <string>
#include <vector>

#include "qclone/copier.hpp"
#include "qclone/linalg.hpp"

namespace qclone {

/// An eigenvalue counts as negative below this threshold.
inline constexpr double kNegativeThreshold = -1e-10;

enum class Separability { Separable, Inseparable, Indeterminate };

std::string_view to_string(Separability s);

/// Partial-transpose (PPT) analysis of a two-qubit state. For two qubits a
/// negative eigenvalue of the partial transpose is necessary and sufficient
/// for entanglement.
struct PptReport {
  std::array<double, 4> spectrum{};  // ascending
  double min_eigenvalue = 0.0;
  Separability verdict = Separability::Separable;
  std::string tag;

  /// True iff min_eigenvalue < kNegativeThreshold.
  bool inseparable() const noexcept { return verdict == Separability::Inseparable; }
};

/// Spectrum of the partial transpose on `subsystem` (default: the second
/// qubit). Minimum eigenvalues in [-1e-10, 0) give Indeterminate.
PptReport ppt_verdict(const DensityMatrix& rho, int subsystem = 1, std::string tag = {});

struct BoundCheck {
  double theta = 0.0;
  double e = 0.0;     // smallest partial-transpose eigenvalue of the pair
  double ebar = 0.0;  // -(1 + 4 (sqrt5 - 2) |alpha|^2 |beta|^2) / 6
  double gap = 0.0;   // ebar - e
  bool satisfied = false;  // e <= ebar + 1e-9
};

/// Negativity bound for the triplicator's (a2,a3) pair at phi = pi/2.
BoundCheck negativity_bound_check(double theta);

/// Upper bound on the negative eigenvalue at phi = pi/2.
double negativity_upper_bound(const InputQubit& input);

struct CorrelationRow {
  double theta = 0.0;
  double phi = 0.0;
  double d1 = 0.0;  // copy qubit a2
  double e = 0.0;   // smallest eigenvalue of the (a2,a3) partial transpose
};

struct CorrelationTable {
  std::vector<CorrelationRow> rows;  // theta-major
  /// Largest |E + 1/6| over rows with phi in {0, pi}; 0 when there are none.
  double real_input_deviation = 0.0;
  /// For every theta, the phi grid point where E is smallest lies at
  /// phi = pi/2 or 3pi/2 (within half a grid step when those are off-grid).
  bool minimum_at_quarter_turn = true;
};

/// Triplicator sweep pairing the copy distance d1 with the negative
/// eigenvalue E on the (a2,a3) pair.
CorrelationTable entanglement_distance_correlation(const std::vector<double>& thetas,
                                                   const std::vector<double>& phis);

}  // namespace qclone
