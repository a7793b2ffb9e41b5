#include "qclone/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qclone/separability.hpp"

namespace qclone {

namespace {

void validate_grid(const Grid& g, const char* name) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  if (g.count < 1) throw std::invalid_argument(std::string(name) + " grid needs count >= 1");
  if (!std::isfinite(g.start) || !std::isfinite(g.stop)) {
    throw std::invalid_argument(std::string(name) + " grid bounds must be finite");
  }
  const auto inside = [](double x) { return x >= 0.0 && x <= 2.0 * std::numbers::pi; };
  if (!inside(g.start) || !inside(g.stop)) {
    throw std::invalid_argument(std::string(name) + " grid must lie within [0, " +
                                std::to_string(kTwoPi) + "]");
  }
}

}  // namespace

double Grid::at(int i) const {
  if (count <= 1) return start;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::vector<double> Grid::points() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = at(i);
  return out;
}

void SweepSpec::validate() const {
  validate_grid(theta, "theta");
  validate_grid(phi, "phi");
}

bool SweepSpec::wants(Metric m) const {
  return std::find(outputs.begin(), outputs.end(), m) != outputs.end();
}

SweepRow evaluate_point(const SweepSpec& spec, double theta, double phi) {
  const CopyReport report = run_copier({theta, phi}, spec.variant);
  const Distances& d = report.distances;
  SweepRow row;
  row.theta = theta;
  row.phi = phi;
  row.variant = spec.variant;
  if (spec.wants(Metric::D1)) {
    row.d1_a1 = d.d1[kOriginal];
    row.d1_a2 = d.d1[kCopyA];
    row.d1_a3 = d.d1[kCopyB];
  }
  if (spec.wants(Metric::D2)) {
    row.d2_a2a3 = d.d2[0];
    row.d2_a1a2 = d.d2[1];
    row.d2_a1a3 = d.d2[2];
  }
  if (spec.wants(Metric::D3)) row.d3 = d.d3;
  if (spec.wants(Metric::Scaling)) row.s_a2 = report.scaling[kCopyA];
  if (spec.wants(Metric::Fidelity)) row.fid_a2 = report.fidelity[kCopyA].ideal;
  if (spec.wants(Metric::Negativity)) row.e_a2a3 = ppt_verdict(report.pairs[0]).min_eigenvalue;
  return row;
}

std::vector<SweepRow> sweep_serial(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.theta.count) * static_cast<std::size_t>(spec.phi.count));
  for (int t = 0; t < spec.theta.count; ++t) {
    for (int p = 0; p < spec.phi.count; ++p) {
      rows.push_back(evaluate_point(spec, spec.theta.at(t), spec.phi.at(p)));
    }
  }
  return rows;
}

std::vector<SweepRow> sweep_parallel(const SweepSpec& spec) {
  spec.validate();
  const long n_phi = spec.phi.count;
  const long total = static_cast<long>(spec.theta.count) * n_phi;
  std::vector<SweepRow> rows(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < total; ++k) {
    const int t = static_cast<int>(k / n_phi);
    const int p = static_cast<int>(k % n_phi);
    rows[static_cast<std::size_t>(k)] = evaluate_point(spec, spec.theta.at(t), spec.phi.at(p));
  }
  return rows;
}

}  // namespace qclone
