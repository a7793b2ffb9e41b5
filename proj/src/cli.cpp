#include "qclone/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qclone/copier.hpp"
#include "qclone/gates.hpp"
#include "qclone/report.hpp"
#include "qclone/sweep.hpp"
#include "qclone/verify.hpp"

namespace qclone {

namespace {

using std::numbers::pi;

// Amplitudes whose squared norm is within this of 1 are accepted silently;
// up to kRenormalizeLimit they are renormalized with a warning.
constexpr double kSilentNormSlack = 1e-9;
constexpr double kRenormalizeLimit = 1e-6;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_double(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(text) +
                     "' (plain numbers in radians expected)");
  }
  return v;
}

// "re" or "re,im".
Complex parse_amplitude(const std::string& text, std::string_view what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text, what), 0.0};
  return {parse_double(std::string_view(text).substr(0, comma), what),
          parse_double(std::string_view(text).substr(comma + 1), what)};
}

// "value" or "start:stop:count".
Grid parse_grid(const std::string& text, std::string_view what) {
  const auto first = text.find(':');
  if (first == std::string::npos) {
    const double v = parse_double(text, what);
    return {v, v, 1};
  }
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos) {
    throw UsageError(std::string(what) + " grid must be 'value' or 'start:stop:count'");
  }
  const std::string_view view(text);
  const double count = parse_double(view.substr(second + 1), what);
  if (count != std::floor(count) || count < 1.0 || count > 1e6) {
    throw UsageError(std::string(what) + " grid count must be a positive integer");
  }
  return {parse_double(view.substr(0, first), what),
          parse_double(view.substr(first + 1, second - first - 1), what), static_cast<int>(count)};
}

CopyVariant variant_from(const std::string& text) {
  const auto v = parse_variant(text);
  if (!v) throw UsageError("unknown variant '" + text + "' (duplicator|triplicator)");
  return *v;
}

struct InputOptions {
  std::optional<double> theta;
  std::optional<double> phi;
  std::string alpha;
  std::string beta;

  void attach(CLI::App* cmd) {
    auto* t = cmd->add_option("--theta", theta, "input angle: alpha = sin(theta) e^{i phi}, beta = cos(theta)");
    auto* p = cmd->add_option("--phi", phi, "input relative phase (radians)");
    auto* a = cmd->add_option("--alpha", alpha, "amplitude of |0>, as 're' or 're,im'");
    auto* b = cmd->add_option("--beta", beta, "amplitude of |1>, as 're' or 're,im'");
    a->needs(b);
    b->needs(a);
    t->excludes(a)->excludes(b);
    p->excludes(a)->excludes(b);
  }

  InputQubit resolve(std::ostream& err) const {
    if (!alpha.empty()) {
      const Complex a = parse_amplitude(alpha, "alpha");
      const Complex b = parse_amplitude(beta, "beta");
      const double norm2 = std::norm(a) + std::norm(b);
      const double dev = std::abs(norm2 - 1.0);
      if (dev > kRenormalizeLimit) {
        throw UsageError("amplitudes are not normalizable: |alpha|^2 + |beta|^2 = " +
                         format_number(norm2, kHumanDigits));
      }
      if (dev > kSilentNormSlack) {
        err << "warning: |alpha|^2 + |beta|^2 = " << format_number(norm2, 12)
            << "; renormalizing\n";
      }
      return InputQubit::from_amplitudes(a, b, kRenormalizeLimit);
    }
    if (!theta) throw UsageError("specify the input with --theta [--phi] or --alpha/--beta");
    return {*theta, phi.value_or(0.0)};
  }
};

std::ostream& open_output(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file.open(path);
  if (!file) throw UsageError("cannot write to '" + path + "'");
  return file;
}

std::string stamp(bool disabled) { return disabled ? std::string{} : utc_timestamp(); }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact simulation of the three-qubit quantum copier network"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // copy
  auto* copy = app.add_subcommand("copy", "run the duplicator or triplicator on one input state");
  InputOptions copy_input;
  copy_input.attach(copy);
  std::string copy_variant = "duplicator";
  std::string copy_format = "text";
  bool copy_no_stamp = false;
  copy->add_option("--variant", copy_variant, "duplicator|triplicator")->capture_default_str();
  copy->add_option("--format", copy_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  copy->add_flag("--no-timestamp", copy_no_stamp, "omit generated_at from JSON output");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "evaluate metrics over a (theta, phi) grid");
  std::string sweep_variant = "duplicator";
  std::string theta_grid = "0:1.5707963267948966:11";
  std::string phi_grid = "0:6.2831853071795862:13";
  std::vector<std::string> metrics;
  std::string sweep_out;
  std::string sweep_format = "csv";
  bool serial = false;
  bool sweep_no_stamp = false;
  sweep->add_option("--variant", sweep_variant, "duplicator|triplicator")->capture_default_str();
  sweep->add_option("--theta", theta_grid, "theta grid, 'value' or 'start:stop:count'")
      ->capture_default_str();
  sweep->add_option("--phi", phi_grid, "phi grid, 'value' or 'start:stop:count'")
      ->capture_default_str();
  sweep->add_option("--metrics", metrics, "comma-separated subset of d1,d2,d3,s,fidelity,E")
      ->delimiter(',');
  sweep->add_option("--out", sweep_out, "output file (default: stdout)");
  sweep->add_option("--format", sweep_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep->add_flag("--serial", serial, "use the single-threaded reference implementation");
  sweep->add_flag("--no-timestamp", sweep_no_stamp, "omit generated_at from JSON output");

  // verify
  auto* verify = app.add_subcommand("verify", "run the full verification suite");
  std::optional<double> tolerance;
  std::vector<std::string> only;
  std::optional<int> criterion;
  std::string verify_format = "text";
  bool verify_no_stamp = false;
  verify->add_option("--tolerance", tolerance, "override the tolerance of every numeric check")
      ->check(CLI::PositiveNumber);
  verify->add_option("--only", only, "comma-separated check groups")->delimiter(',');
  verify->add_option("--criterion", criterion, "run a single acceptance criterion")
      ->check(CLI::Range(1, kCriterionCount));
  verify->add_option("--format", verify_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  verify->add_flag("--no-timestamp", verify_no_stamp, "omit generated_at from JSON output");

  // network
  auto* network = app.add_subcommand("network", "run a gate network file on an input state");
  std::string network_file;
  InputOptions network_input;
  std::optional<int> qubits;
  std::string network_format = "text";
  bool network_no_stamp = false;
  network->add_option("file", network_file, "gate network text file")->required();
  network_input.attach(network);
  network->add_option("--qubits", qubits, "register size (default: smallest that fits)")
      ->check(CLI::Range(1, kMaxQubits));
  network->add_option("--format", network_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  network->add_flag("--no-timestamp", network_no_stamp, "omit generated_at from JSON output");

  // angles
  auto* angles = app.add_subcommand("angles", "solve for preparation angles of C1..C4");
  std::vector<double> amplitudes;
  std::string angles_variant;
  angles->add_option("amplitudes", amplitudes, "C1 C2 C3 C4 (real, normalized)")->expected(4);
  angles->add_option("--variant", angles_variant, "use the amplitudes of duplicator|triplicator");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*copy) {
      const InputQubit in = copy_input.resolve(err);
      const CopyReport report = run_copier(in, variant_from(copy_variant));
      if (copy_format == "json") {
        write_copy_json(out, report, stamp(copy_no_stamp));
      } else {
        out << render_copy_text(report);
      }
      return kExitOk;
    }

    if (*sweep) {
      SweepSpec spec;
      spec.variant = variant_from(sweep_variant);
      spec.theta = parse_grid(theta_grid, "theta");
      spec.phi = parse_grid(phi_grid, "phi");
      if (!metrics.empty()) {
        spec.outputs.clear();
        for (const auto& m : metrics) {
          const auto metric = parse_metric(m);
          if (!metric) throw UsageError("unknown metric '" + m + "' (d1,d2,d3,s,fidelity,E)");
          spec.outputs.push_back(*metric);
        }
      }
      spec.validate();
      const auto rows = serial ? sweep_serial(spec) : sweep_parallel(spec);
      std::ofstream file;
      std::ostream& dest = open_output(sweep_out, file, out);
      if (sweep_format == "json") {
        write_sweep_json(dest, spec, rows, stamp(sweep_no_stamp));
      } else {
        write_sweep_csv(dest, rows);
      }
      dest.flush();
      if (!dest) throw UsageError("failed writing '" + sweep_out + "'");
      return kExitOk;
    }

    if (*verify) {
      VerifyOptions options;
      options.tolerance = tolerance;
      options.only = only;
      options.criterion = criterion;
      const VerificationResult result = run_verification(options);
      if (verify_format == "json") {
        write_verification_json(out, result, options, stamp(verify_no_stamp));
      } else {
        out << render_verification_text(result);
      }
      return result.all_passed() ? kExitOk : kExitFailure;
    }

    if (*network) {
      const GateNetwork net = load_network(network_file);
      const InputQubit in = network_input.resolve(err);
      const int n = qubits.value_or(required_qubits(net));
      validate_network(net, n);
      const StateAnalysis analysis = analyze_output(run_network(embed_input(in, n), net), in);
      if (network_format == "json") {
        write_analysis_json(out, analysis, in, stamp(network_no_stamp));
      } else {
        out << render_analysis_text(analysis, in);
      }
      return kExitOk;
    }

    if (*angles) {
      std::array<double, 4> c{};
      if (!angles_variant.empty()) {
        if (!amplitudes.empty()) throw UsageError("give either amplitudes or --variant, not both");
        c = variant_amplitudes(variant_from(angles_variant)).values();
      } else if (amplitudes.size() == 4) {
        std::copy(amplitudes.begin(), amplitudes.end(), c.begin());
      } else {
        throw UsageError("angles needs four amplitudes C1 C2 C3 C4 or --variant");
      }
      const PreparationAmplitudes target(c);
      try {
        const PreparationAngles a = solve_preparation_angles(target);
        out << "theta1 " << format_number(a.theta1) << '\n'
            << "theta2 " << format_number(a.theta2) << '\n'
            << "theta3 " << format_number(a.theta3) << '\n'
            << "residual " << format_number(angle_residual(a, target), 3) << '\n'
            << "# preparation network on a bare two-qubit register\n"
            << format_network(preparation_network(a, 0, 1));
        return kExitOk;
      } catch (const AngleSolveError& e) {
        err << "error: " << e.what() << " (best residual "
            << format_number(e.best_residual(), 3) << ")\n";
        return kExitFailure;
      }
    }
  } catch (const NetworkParseError& e) {
    err << "error: " << network_file << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const GateError& e) {
    err << "error: gate " << e.position() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qclone
