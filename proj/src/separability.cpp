#include "qclone/separability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qclone {

namespace {

using std::numbers::pi;

double pair_min_eigenvalue(const CopyReport& report) {
  return hermitian_eigenvalues(partial_transpose(report.pairs[0])).front();
}

bool near(double x, double target, double tolerance) { return std::abs(x - target) <= tolerance; }

}  // namespace

std::string_view to_string(Separability s) {
  switch (s) {
    case Separability::Separable: return "separable";
    case Separability::Inseparable: return "inseparable";
    case Separability::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

PptReport ppt_verdict(const DensityMatrix& rho, int subsystem, std::string tag) {
  if (rho.num_qubits() != 2) throw DimensionError("ppt_verdict needs a two-qubit state");
  const auto eig = hermitian_eigenvalues(partial_transpose(rho, subsystem));
  PptReport report;
  std::copy(eig.begin(), eig.end(), report.spectrum.begin());
  report.min_eigenvalue = eig.front();
  if (report.min_eigenvalue < kNegativeThreshold) {
    report.verdict = Separability::Inseparable;
  } else if (report.min_eigenvalue < 0.0) {
    report.verdict = Separability::Indeterminate;
  } else {
    report.verdict = Separability::Separable;
  }
  report.tag = std::move(tag);
  return report;
}

double negativity_upper_bound(const InputQubit& input) {
  const double ab = std::norm(input.alpha()) * std::norm(input.beta());
  return -(1.0 + 4.0 * (std::sqrt(5.0) - 2.0) * ab) / 6.0;
}

BoundCheck negativity_bound_check(double theta) {
  const InputQubit input{theta, pi / 2.0};
  BoundCheck check;
  check.theta = theta;
  check.e = pair_min_eigenvalue(run_copier(input, CopyVariant::Triplicator));
  check.ebar = negativity_upper_bound(input);
  check.gap = check.ebar - check.e;
  check.satisfied = check.e <= check.ebar + 1e-9;
  return check;
}

CorrelationTable entanglement_distance_correlation(const std::vector<double>& thetas,
                                                   const std::vector<double>& phis) {
  CorrelationTable table;
  table.rows.reserve(thetas.size() * phis.size());
  for (double theta : thetas) {
    for (double phi : phis) {
      const CopyReport report = run_copier({theta, phi}, CopyVariant::Triplicator);
      table.rows.push_back({theta, phi, report.distances.d1[kCopyA], pair_min_eigenvalue(report)});
    }
  }

  const double half_step =
      phis.size() > 1 ? 0.5 * std::abs(phis[1] - phis[0]) + 1e-12 : 1e-12;
  for (std::size_t t = 0; t < thetas.size(); ++t) {
    const auto first = table.rows.begin() + static_cast<std::ptrdiff_t>(t * phis.size());
    const auto last = first + static_cast<std::ptrdiff_t>(phis.size());
    for (auto it = first; it != last; ++it) {
      if (near(it->phi, 0.0, 1e-12) || near(it->phi, pi, 1e-12) || near(it->phi, 2.0 * pi, 1e-12)) {
        table.real_input_deviation =
            std::max(table.real_input_deviation, std::abs(it->e + 1.0 / 6.0));
      }
    }
    if (first == last) continue;
    const auto [lo, hi] = std::minmax_element(
        first, last, [](const CorrelationRow& a, const CorrelationRow& b) { return a.e < b.e; });
    if (hi->e - lo->e <= 1e-10) continue;  // E independent of phi (basis input)
    if (!near(lo->phi, pi / 2.0, half_step) && !near(lo->phi, 3.0 * pi / 2.0, half_step)) {
      table.minimum_at_quarter_turn = false;
    }
  }
  return table;
}

}  // namespace qclone
