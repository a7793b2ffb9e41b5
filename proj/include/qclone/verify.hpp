#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qclone {

/// Outcome of one verification check. Numeric checks pass when
/// residual <= tolerance; boolean checks count violations and pass at zero.
struct CheckResult {
  std::string id;
  int criterion = 0;
  std::string group;
  std::string reference;  // what is being verified
  double expected = 0.0;
  double observed = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool numeric = true;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  /// Replaces the tolerance of every numeric check.
  std::optional<double> tolerance;
  /// Restrict to these groups (see verification_groups()); empty = all.
  std::vector<std::string> only;
  /// Restrict to one acceptance criterion (1-13).
  std::optional<int> criterion;
};

struct VerificationResult {
  std::vector<CheckResult> checks;

  std::size_t passed() const;
  std::size_t failed() const { return checks.size() - passed(); }
  bool all_passed() const { return passed() == checks.size(); }
};

inline constexpr int kCriterionCount = 13;

std::vector<std::string> verification_groups();
std::string_view criterion_title(int criterion);

/// Runs the checks selected by `options`. Deterministic: the same options
/// always yield the same results in the same order.
VerificationResult run_verification(const VerifyOptions& options = {});

std::string render_verification_text(const VerificationResult& result);
void write_verification_json(std::ostream& out, const VerificationResult& result,
                             const VerifyOptions& options, const std::string& timestamp);

}  // namespace qclone
