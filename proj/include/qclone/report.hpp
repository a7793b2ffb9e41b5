#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qclone/copier.hpp"
#include "qclone/separability.hpp"
#include "qclone/sweep.hpp"

namespace qclone {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;
inline constexpr int kMachineDigits = 17;
inline constexpr int kHumanDigits = 6;

inline constexpr std::string_view kCsvHeader =
    "theta,phi,variant,d1_a1,d1_a2,d1_a3,d2_a2a3,d2_a1a2,d2_a1a3,d3,s_a2,fid_a2,E_a2a3";

/// printf-style %.Ng rendering. Throws std::domain_error for NaN or Inf.
std::string format_number(double value, int significant = kMachineDigits);

std::string_view to_string(Metric m);
std::optional<Metric> parse_metric(std::string_view text);

/// Minimal streaming JSON emitter. Numbers use format_number at 17
/// significant digits so JSON and CSV renderings of a value are identical.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(std::optional<double> v);
  JsonWriter& value(long long v);
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

 private:
  struct Frame {
    bool object;
    int count;
  };
  void before_value();
  void newline();
  std::ostream& out_;
  std::vector<Frame> stack_;
  bool after_key_ = false;
};

/// ISO-8601 UTC timestamp for document metadata.
std::string utc_timestamp();

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// {meta, rows[], summary}. `timestamp` empty omits meta.generated_at.
void write_sweep_json(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows,
                      const std::string& timestamp);

/// Matrix rows as text, with basis labels. `descending` prints in the
/// {|1..1>, ..., |0..0>} order.
std::string render_matrix(const Matrix& m, bool descending, int digits = kHumanDigits);

/// Human-readable copy report: matrices in both basis orders, distances,
/// scaling factors, fidelity splits and PPT verdicts.
std::string render_copy_text(const CopyReport& report);
void write_copy_json(std::ostream& out, const CopyReport& report, const std::string& timestamp);

std::string render_analysis_text(const StateAnalysis& analysis, const InputQubit& input);
void write_analysis_json(std::ostream& out, const StateAnalysis& analysis, const InputQubit& input,
                         const std::string& timestamp);

}  // namespace qclone
