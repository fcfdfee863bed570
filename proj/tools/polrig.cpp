// polrig: exact invariants, catalog scans and numerical verification of
// polarized pairs from the command line.
//
// Exit codes: 0 ok/pass, 1 verification or calibration failure, 2 input
// error, 3 numerics unsupported for the requested family.

#include "polrig/catalog.hpp"
#include "polrig/errors.hpp"
#include "polrig/manifest.hpp"
#include "polrig/numgeo.hpp"
#include "polrig/report_format.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace polrig;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitUnsupported = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<io::OutputRecord> records_for(const std::vector<PolarizedPair>& pairs) {
  std::vector<io::OutputRecord> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back({p, invariant_report(p), std::nullopt});
  return out;
}

int cmd_invariants(const std::string& manifest, const std::string& format) {
  const auto records = records_for(io::read_manifest(manifest));
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(io::to_json(r));
    std::cout << arr.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << io::csv_header();
    for (const auto& r : records) std::cout << io::csv_row(r);
  } else {
    std::cout << io::format_table(records);
  }
  return kExitOk;
}

int cmd_scan(const std::string& family_arg, int n, std::int64_t max_degree, const std::string& out_path,
             const std::string& format) {
  if (n < 1) throw InputError("--n must be ≥ 1");
  if (max_degree < 1) throw InputError("--max-degree must be ≥ 1");
  std::optional<Family> family;
  if (family_arg != "all") {
    family = parse_family(family_arg);
    if (!family) throw InputError("unknown family '" + family_arg + "'");
  }
  const auto records = records_for(enumerate_by_degree(n, max_degree, family));

  std::string gap_line;
  std::optional<GapReport> gap;
  if (n < 3) {
    gap_line = "gap check skipped (requires n ≥ 3)";
  } else if (max_degree < n) {
    gap_line = "gap check skipped (requires max-degree ≥ n)";
  } else {
    gap = second_gap_check(n, max_degree);
    gap_line = "gap (" + std::to_string(n) + ", " + std::to_string(2 * n - 2) +
               ") empty: " + (gap->holds ? "true" : "false");
  }

  std::ostringstream body;
  if (format == "json") {
    json doc;
    doc["n"] = n;
    doc["max_degree"] = max_degree;
    doc["family"] = family_arg;
    doc["rows"] = json::array();
    for (const auto& r : records) doc["rows"].push_back(io::to_json(r));
    json summary;
    summary["text"] = gap_line;
    if (gap) {
      summary["holds"] = gap->holds;
      summary["min_above_n"] = to_exact_string(gap->min_above_n);
    }
    doc["gap"] = summary;
    body << doc.dump(2) << "\n";
  } else {
    body << io::csv_header();
    for (const auto& r : records) body << io::csv_row(r);
    body << "# " << gap_line << "\r\n";
    if (gap) body << "# least value above n: " << to_exact_string(gap->min_above_n) << "\r\n";
  }

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw InputError("cannot write " + out_path);
    file << body.str();
    std::cout << records.size() << " rows written to " << out_path << "\n" << gap_line << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& manifest, std::int64_t samples, std::uint64_t seed, double tolerance_sigma) {
  if (samples < numgeo::kMinimumSamples) {
    throw InputError("--samples must be ≥ " + std::to_string(numgeo::kMinimumSamples));
  }
  if (!(tolerance_sigma > 0.0)) throw InputError("--tolerance-sigma must be positive");
  const auto pairs = io::read_manifest(manifest);

  // Reject unsupported entries before spending time on the others.
  std::vector<numgeo::EmbeddedChart> charts;
  for (const auto& p : pairs) {
    try {
      charts.push_back(numgeo::embed(p));
    } catch (const NumericsUnsupported& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUnsupported;
    }
  }

  bool all_pass = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    io::OutputRecord record{pairs[i], invariant_report(pairs[i]), std::nullopt};
    const auto result = numgeo::mean_sigma_numeric(charts[i], samples, seed);
    record.numeric = io::check_numeric(record.report.mean_sigma_sq, record.report.degree, result, tolerance_sigma);
    all_pass = all_pass && record.numeric->passed;
    std::cout << io::format_verification(record);
  }
  return all_pass ? kExitOk : kExitFail;
}

int cmd_calibrate(int n, double step, double kappa) {
  if (n < 1) throw InputError("--n must be ≥ 1");
  if (!(step > 0.0) || !std::isfinite(step)) throw InputError("--step must be positive");
  const auto report = numgeo::calibrate(n, step, kappa);
  const auto half = numgeo::calibrate(n, step / 2, kappa);

  std::cout << "calibration of projective_space(" << n << ",twist=1)\n";
  std::cout << "  kappa              : " << io::fixed(report.kappa, 3) << "\n";
  std::cout << "  step               : " << report.step << "\n";
  std::cout << "  expected scalar    : " << io::fixed(report.expected_scalar, 6) << "\n";
  std::cout << "  mean scalar        : " << io::fixed(report.mean_scalar, 9) << "\n";
  std::cout << "  max deviation      : " << report.max_deviation << " (tolerance " << report.tolerance << ")\n";
  const double ratio = report.max_deviation / half.max_deviation;
  std::cout << "  convergence        : max deviation " << half.max_deviation << " at step/2, ratio "
            << io::fixed(ratio, 3) << ", observed order " << io::fixed(std::log2(ratio), 3) << "\n";
  std::cout << "  result             : " << (report.passed ? "PASS" : "FAIL") << "\n";
  return report.passed ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout.imbue(std::locale::classic());
  CLI::App app{"Exact invariants and numerical checks for polarized projective manifolds"};
  app.require_subcommand(1);

  std::string manifest;
  std::string format = "table";
  auto* inv = app.add_subcommand("invariants", "Exact invariants for every pair in a manifest");
  inv->add_option("--manifest", manifest, "JSON manifest (object or array of objects)")->required();
  inv->add_option("--format", format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));

  std::string family = "all";
  int n = 0;
  std::int64_t max_degree = 0;
  std::string out_path;
  std::string scan_format = "csv";
  auto* scan = app.add_subcommand("scan", "Enumerate catalog pairs of dimension n up to a degree bound");
  scan->add_option("--family", family, "family name or 'all'");
  scan->add_option("--n", n, "dimension")->required();
  scan->add_option("--max-degree", max_degree, "largest degree L^n to list")->required();
  scan->add_option("--out", out_path, "write rows to this file instead of stdout");
  scan->add_option("--format", scan_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  double tolerance_sigma = 3.0;
  auto* verify = app.add_subcommand("verify", "Monte Carlo check of the mean against the exact value");
  verify->add_option("--manifest", manifest, "JSON manifest")->required();
  verify->add_option("--samples", samples, "sample count (≥ 10000)")->required();
  verify->add_option("--seed", seed, "random seed")->required();
  verify->add_option("--tolerance-sigma", tolerance_sigma, "pass threshold on |z|");

  int cal_n = 0;
  double step = numgeo::kDefaultStep;
  double kappa = numgeo::kDefaultKappa;
  auto* cal = app.add_subcommand("calibrate", "Scalar curvature of P^n against n(n+1)");
  cal->add_option("--n", cal_n, "dimension")->required();
  cal->add_option("--step", step, "relative finite-difference step");
  cal->add_option("--kappa", kappa, "metric normalization (2 is correct)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (inv->parsed()) return cmd_invariants(manifest, format);
    if (scan->parsed()) return cmd_scan(family, n, max_degree, out_path, scan_format);
    if (verify->parsed()) return cmd_verify(manifest, samples, seed, tolerance_sigma);
    if (cal->parsed()) return cmd_calibrate(cal_n, step, kappa);
  } catch (const io::ManifestError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericsUnsupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInput;
}
