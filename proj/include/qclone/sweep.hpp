#pragma once

#include <optional>
#include <vector>

#include "qclone/copier.hpp"

namespace qclone {

/// Evenly spaced grid from `start` to `stop` inclusive; a single point sits
/// at `start`.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  double at(int i) const;
  std::vector<double> points() const;
};

enum class Metric { D1, D2, D3, Scaling, Fidelity, Negativity };

struct SweepSpec {
  CopyVariant variant = CopyVariant::Duplicator;
  Grid theta;
  Grid phi;
  std::vector<Metric> outputs{Metric::D1, Metric::D2, Metric::D3,
                              Metric::Scaling, Metric::Fidelity, Metric::Negativity};

  /// Throws std::invalid_argument unless counts >= 1 and both grids lie
  /// within [0, 2 pi].
  void validate() const;
  bool wants(Metric m) const;
};

/// One grid point. Unselected or undefined metrics are nullopt.
struct SweepRow {
  double theta = 0.0;
  double phi = 0.0;
  CopyVariant variant = CopyVariant::Duplicator;
  std::optional<double> d1_a1, d1_a2, d1_a3;
  std::optional<double> d2_a2a3, d2_a1a2, d2_a1a3;
  std::optional<double> d3;
  std::optional<double> s_a2;
  std::optional<double> fid_a2;
  std::optional<double> e_a2a3;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Metrics of a single grid point.
SweepRow evaluate_point(const SweepSpec& spec, double theta, double phi);

/// Reference implementation: one point after another, theta-major.
std::vector<SweepRow> sweep_serial(const SweepSpec& spec);

/// OpenMP version. Rows land in the same theta-major order as
/// sweep_serial and are bit-identical to it.
std::vector<SweepRow> sweep_parallel(const SweepSpec& spec);

}  // namespace qclone
