#include "qclone/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qclone {

namespace {

std::string basis_label(std::size_t index, int num_qubits) {
  std::string bits(static_cast<std::size_t>(num_qubits), '0');
  for (int b = 0; b < num_qubits; ++b) {
    if (index & (std::size_t{1} << (num_qubits - 1 - b))) bits[static_cast<std::size_t>(b)] = '1';
  }
  return "|" + bits + ">";
}

std::string format_complex(Complex z, int digits) {
  std::string out = format_number(z.real(), digits);
  if (z.imag() != 0.0) {
    out += z.imag() < 0.0 ? " - " : " + ";
    out += format_number(std::abs(z.imag()), digits) + "i";
  }
  return out;
}

std::string optional_text(std::optional<double> v, int digits = kHumanDigits) {
  return v ? format_number(*v, digits) : std::string("n/a");
}

void csv_field(std::ostream& out, std::optional<double> v) {
  out << ',';
  if (v) out << format_number(*v);
}

void write_grid(JsonWriter& json, const Grid& g) {
  json.begin_object();
  json.key("start").value(g.start);
  json.key("stop").value(g.stop);
  json.key("count").value(g.count);
  json.end_object();
}

void write_tolerances(JsonWriter& json) {
  json.begin_object();
  json.key("structural").value(tol::kStructural);
  json.key("eigenvalue").value(tol::kEigen);
  json.key("psd_slack").value(tol::kPsdSlack);
  json.key("negative_threshold").value(kNegativeThreshold);
  json.key("angle_residual").value(kAngleResidualTolerance);
  json.end_object();
}

void write_meta_header(JsonWriter& json, std::string_view kind, const std::string& timestamp) {
  json.key("schema_version").value(kSchemaVersion);
  json.key("tool_version").value(kToolVersion);
  json.key("kind").value(kind);
  if (!timestamp.empty()) json.key("generated_at").value(timestamp);
}

void write_matrix(JsonWriter& json, const Matrix& m) {
  json.begin_array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json.begin_array();
    for (std::size_t c = 0; c < m.dim(); ++c) {
      json.begin_array().value(m(r, c).real()).value(m(r, c).imag()).end_array();
    }
    json.end_array();
  }
  json.end_array();
}

void write_state(JsonWriter& json, const PureState& s) {
  json.begin_array();
  for (const Complex& a : s.amplitudes()) json.begin_array().value(a.real()).value(a.imag()).end_array();
  json.end_array();
}

void write_ppt(JsonWriter& json, const PptReport& ppt) {
  json.begin_object();
  json.key("spectrum").begin_array();
  for (double e : ppt.spectrum) json.value(e);
  json.end_array();
  json.key("min_eigenvalue").value(ppt.min_eigenvalue);
  json.key("verdict").value(to_string(ppt.verdict));
  json.end_object();
}

void write_input(JsonWriter& json, const InputQubit& input) {
  json.begin_object();
  json.key("theta").value(input.theta);
  json.key("phi").value(input.phi);
  json.key("alpha").begin_array().value(input.alpha().real()).value(input.alpha().imag()).end_array();
  json.key("beta").value(input.beta().real());
  json.end_object();
}

std::string qubit_name(int q) { return "a" + std::to_string(q + 1); }

void write_qubit_row(JsonWriter& json, int qubit, const DensityMatrix& rho, double d1,
                     std::optional<double> s, const FidelitySplit& fidelity) {
  json.begin_object();
  json.key("record").value("qubit");
  json.key("qubit").value(qubit_name(qubit));
  json.key("rho");
  write_matrix(json, rho.matrix());
  json.key("d1").value(d1);
  json.key("s").value(s);
  json.key("fidelity_ideal").value(fidelity.ideal);
  json.key("fidelity_orthogonal").value(fidelity.orthogonal);
  json.end_object();
}

void write_pair_row(JsonWriter& json, int first, int second, const DensityMatrix& rho, double d2,
                    const PptReport& ppt) {
  json.begin_object();
  json.key("record").value("pair");
  json.key("pair").value(qubit_name(first) + qubit_name(second));
  json.key("rho");
  write_matrix(json, rho.matrix());
  json.key("d2").value(d2);
  json.key("ppt");
  write_ppt(json, ppt);
  json.end_object();
}

void append_ppt_text(std::ostringstream& os, const PptReport& ppt) {
  os << "    PPT spectrum: {";
  for (std::size_t i = 0; i < ppt.spectrum.size(); ++i) {
    os << (i ? ", " : "") << format_number(ppt.spectrum[i], kHumanDigits);
  }
  os << "}  -> " << to_string(ppt.verdict) << "\n";
}

void append_matrix_text(std::ostringstream& os, const Matrix& m) {
  os << "    ascending basis:\n" << render_matrix(m, false);
  os << "    descending basis:\n" << render_matrix(m, true);
}

}  // namespace

std::string format_number(double value, int significant) {
  if (!std::isfinite(value)) throw std::domain_error("cannot render non-finite number");
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", significant, value);
  return buf;
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::D1: return "d1";
    case Metric::D2: return "d2";
    case Metric::D3: return "d3";
    case Metric::Scaling: return "s";
    case Metric::Fidelity: return "fidelity";
    case Metric::Negativity: return "E";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view text) {
  for (Metric m : {Metric::D1, Metric::D2, Metric::D3, Metric::Scaling, Metric::Fidelity,
                   Metric::Negativity}) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

void JsonWriter::newline() {
  out_ << '\n' << std::string(2 * stack_.size(), ' ');
}

void JsonWriter::before_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!stack_.empty()) {
    if (stack_.back().count++ > 0) out_ << ',';
    newline();
  }
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  out_ << '{';
  stack_.push_back({true, 0});
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const bool had_members = stack_.back().count > 0;
  stack_.pop_back();
  if (had_members) newline();
  out_ << '}';
  if (stack_.empty()) out_ << '\n';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  before_value();
  out_ << '[';
  stack_.push_back({false, 0});
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const bool had_members = stack_.back().count > 0;
  stack_.pop_back();
  if (had_members) newline();
  out_ << ']';
  if (stack_.empty()) out_ << '\n';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  before_value();
  out_ << nlohmann::json(std::string(name)).dump() << ": ";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  const std::string text = format_number(v);
  before_value();
  out_ << text;
  return *this;
}

JsonWriter& JsonWriter::value(std::optional<double> v) { return v ? value(*v) : null(); }

JsonWriter& JsonWriter::value(long long v) {
  before_value();
  out_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  before_value();
  out_ << (v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  before_value();
  out_ << nlohmann::json(std::string(v)).dump();
  return *this;
}

JsonWriter& JsonWriter::null() {
  before_value();
  out_ << "null";
  return *this;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format_number(r.theta) << ',' << format_number(r.phi) << ',' << to_string(r.variant);
    for (auto v : {r.d1_a1, r.d1_a2, r.d1_a3, r.d2_a2a3, r.d2_a1a2, r.d2_a1a3, r.d3, r.s_a2,
                   r.fid_a2, r.e_a2a3}) {
      csv_field(out, v);
    }
    out << '\n';
  }
}

void write_sweep_json(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows,
                      const std::string& timestamp) {
  JsonWriter json(out);
  json.begin_object();
  json.key("meta").begin_object();
  write_meta_header(json, "sweep", timestamp);
  json.key("variant").value(to_string(spec.variant));
  json.key("theta_grid");
  write_grid(json, spec.theta);
  json.key("phi_grid");
  write_grid(json, spec.phi);
  json.key("outputs").begin_array();
  for (Metric m : spec.outputs) json.value(to_string(m));
  json.end_array();
  json.key("tolerances");
  write_tolerances(json);
  json.end_object();

  json.key("rows").begin_array();
  for (const SweepRow& r : rows) {
    json.begin_object();
    json.key("theta").value(r.theta);
    json.key("phi").value(r.phi);
    json.key("variant").value(to_string(r.variant));
    json.key("d1_a1").value(r.d1_a1);
    json.key("d1_a2").value(r.d1_a2);
    json.key("d1_a3").value(r.d1_a3);
    json.key("d2_a2a3").value(r.d2_a2a3);
    json.key("d2_a1a2").value(r.d2_a1a2);
    json.key("d2_a1a3").value(r.d2_a1a3);
    json.key("d3").value(r.d3);
    json.key("s_a2").value(r.s_a2);
    json.key("fid_a2").value(r.fid_a2);
    json.key("E_a2a3").value(r.e_a2a3);
    json.end_object();
  }
  json.end_array();

  json.key("summary").begin_object();
  json.key("rows").value(static_cast<long long>(rows.size()));
  json.end_object();
  json.end_object();
}

std::string render_matrix(const Matrix& m, bool descending, int digits) {
  const Matrix shown = descending ? reverse_basis(m) : m;
  const std::size_t n = m.dim();
  auto label = [&](std::size_t i) { return basis_label(descending ? n - 1 - i : i, m.num_qubits()); };

  std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n));
  std::size_t width = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      cells[r][c] = format_complex(shown(r, c), digits);
      width = std::max(width, cells[r][c].size());
    }
  }
  std::ostringstream os;
  const std::string pad(8, ' ');
  os << pad << std::string(static_cast<std::size_t>(m.num_qubits()) + 3, ' ');
  for (std::size_t c = 0; c < n; ++c) {
    const std::string l = label(c);
    os << "  " << l << std::string(width > l.size() ? width - l.size() : 0, ' ');
  }
  os << '\n';
  for (std::size_t r = 0; r < n; ++r) {
    os << pad << label(r);
    for (std::size_t c = 0; c < n; ++c) {
      os << "  " << cells[r][c] << std::string(width - cells[r][c].size(), ' ');
    }
    os << '\n';
  }
  return os.str();
}

std::string render_copy_text(const CopyReport& report) {
  std::ostringstream os;
  const InputQubit& in = report.input;
  os << "variant: " << to_string(report.variant) << "\n";
  os << "input: theta = " << format_number(in.theta, kHumanDigits)
     << ", phi = " << format_number(in.phi, kHumanDigits) << "  (alpha = "
     << format_complex(in.alpha(), kHumanDigits) << ", beta = "
     << format_number(in.beta().real(), kHumanDigits) << ")\n";

  os << "output state (a1 a2 a3):\n";
  for (std::size_t i = 0; i < report.output.size(); ++i) {
    if (std::abs(report.output[i]) < 1e-15) continue;
    os << "    " << basis_label(i, 3) << "  " << format_complex(report.output[i], kHumanDigits)
       << '\n';
  }

  for (int q = 0; q < 3; ++q) {
    os << "qubit " << qubit_name(q) << ":\n";
    append_matrix_text(os, report.qubits[q].matrix());
    os << "    d1 = " << format_number(report.distances.d1[q], kHumanDigits)
       << "   s = " << optional_text(report.scaling[q])
       << "   fidelity (ideal, orthogonal) = ("
       << format_number(report.fidelity[q].ideal, kHumanDigits) << ", "
       << format_number(report.fidelity[q].orthogonal, kHumanDigits) << ")\n";
  }
  for (int p = 0; p < 3; ++p) {
    os << "pair " << qubit_name(kPairs[p][0]) << qubit_name(kPairs[p][1]) << ":\n";
    append_matrix_text(os, report.pairs[p].matrix());
    os << "    d2 = " << format_number(report.distances.d2[p], kHumanDigits) << '\n';
    append_ppt_text(os, ppt_verdict(report.pairs[p]));
  }
  os << "d3 = " << optional_text(report.distances.d3) << '\n';
  if (report.variant == CopyVariant::Duplicator) {
    const TransposeCheck check = original_transpose_check(report);
    os << "original qubit follows rho_in^T/3 + I/3: " << (check.holds ? "yes" : "no")
       << " (residual " << format_number(check.residual, 3) << ")\n";
  }
  return os.str();
}


std::string render_analysis_text(const StateAnalysis& analysis, const InputQubit& input) {
  std::ostringstream os;
  const int n = analysis.output.num_qubits();
  os << "input a1: theta = " << format_number(input.theta, kHumanDigits)
     << ", phi = " << format_number(input.phi, kHumanDigits) << "; other qubits |0>\n";
  os << "final state:\n";
  for (std::size_t i = 0; i < analysis.output.size(); ++i) {
    if (std::abs(analysis.output[i]) < 1e-15) continue;
    os << "    " << basis_label(i, n) << "  " << format_complex(analysis.output[i], kHumanDigits)
       << '\n';
  }
  for (const QubitAnalysis& q : analysis.qubits) {
    os << "qubit " << qubit_name(q.qubit) << ":\n";
    append_matrix_text(os, q.rho.matrix());
    os << "    d1 = " << format_number(q.d1, kHumanDigits) << "   s = " << optional_text(q.scaling)
       << "   fidelity (ideal, orthogonal) = (" << format_number(q.fidelity.ideal, kHumanDigits)
       << ", " << format_number(q.fidelity.orthogonal, kHumanDigits) << ")\n";
  }
  for (const PairAnalysis& p : analysis.pairs) {
    os << "pair " << qubit_name(p.first) << qubit_name(p.second) << ":\n";
    append_matrix_text(os, p.rho.matrix());
    os << "    d2 = " << format_number(p.d2, kHumanDigits) << '\n';
    append_ppt_text(os, ppt_verdict(p.rho));
  }
  if (analysis.d3) os << "d3 = " << format_number(*analysis.d3, kHumanDigits) << '\n';
  return os.str();
}

void write_copy_json(std::ostream& out, const CopyReport& report, const std::string& timestamp) {
  JsonWriter json(out);
  json.begin_object();
  json.key("meta").begin_object();
  write_meta_header(json, "copy", timestamp);
  json.key("variant").value(to_string(report.variant));
  json.key("num_qubits").value(3);
  json.key("input");
  write_input(json, report.input);
  json.key("output_state");
  write_state(json, report.output);
  json.key("tolerances");
  write_tolerances(json);
  json.end_object();

  json.key("rows").begin_array();
  for (int q = 0; q < 3; ++q) {
    write_qubit_row(json, q, report.qubits[q], report.distances.d1[q], report.scaling[q],
                    report.fidelity[q]);
  }
  int inseparable = 0;
  for (int p = 0; p < 3; ++p) {
    const PptReport ppt = ppt_verdict(report.pairs[p]);
    if (ppt.inseparable()) ++inseparable;
    write_pair_row(json, kPairs[p][0], kPairs[p][1], report.pairs[p], report.distances.d2[p], ppt);
  }
  json.end_array();

  json.key("summary").begin_object();
  json.key("d3").value(report.distances.d3);
  json.key("inseparable_pairs").value(inseparable);
  if (report.variant == CopyVariant::Duplicator) {
    const TransposeCheck check = original_transpose_check(report);
    json.key("original_transpose").begin_object();
    json.key("holds").value(check.holds);
    json.key("residual").value(check.residual);
    json.end_object();
  }
  json.end_object();
  json.end_object();
}

void write_analysis_json(std::ostream& out, const StateAnalysis& analysis, const InputQubit& input,
                         const std::string& timestamp) {
  JsonWriter json(out);
  json.begin_object();
  json.key("meta").begin_object();
  write_meta_header(json, "network", timestamp);
  json.key("num_qubits").value(analysis.output.num_qubits());
  json.key("input");
  write_input(json, input);
  json.key("output_state");
  write_state(json, analysis.output);
  json.key("tolerances");
  write_tolerances(json);
  json.end_object();

  json.key("rows").begin_array();
  for (const QubitAnalysis& q : analysis.qubits) {
    write_qubit_row(json, q.qubit, q.rho, q.d1, q.scaling, q.fidelity);
  }
  int inseparable = 0;
  for (const PairAnalysis& p : analysis.pairs) {
    const PptReport ppt = ppt_verdict(p.rho);
    if (ppt.inseparable()) ++inseparable;
    write_pair_row(json, p.first, p.second, p.rho, p.d2, ppt);
  }
  json.end_array();

  json.key("summary").begin_object();
  json.key("d3").value(analysis.d3);
  json.key("inseparable_pairs").value(inseparable);
  json.end_object();
  json.end_object();
}

}  // namespace qclone
