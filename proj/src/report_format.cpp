#include "polrig/report_format.hpp"

#include "polrig/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace polrig::io {

using nlohmann::json;

namespace {

std::string join(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

// "n=2;twist=2", "a=1 2 3"
std::string params_string(const PolarizedPair& pair) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ProjectiveSpaceParams>) {
          return "n=" + std::to_string(p.n) + ";twist=" + std::to_string(p.twist);
        } else if constexpr (std::is_same_v<T, HypersurfaceParams>) {
          return "n=" + std::to_string(p.n) + ";degree=" + std::to_string(p.degree);
        } else if constexpr (std::is_same_v<T, CompleteIntersectionParams>) {
          return "n=" + std::to_string(p.n) + ";degrees=" + join(p.degrees, ' ');
        } else if constexpr (std::is_same_v<T, ScrollParams>) {
          return "a=" + join(p.a, ' ');
        } else {
          return "factors=" + join(p.factors, ' ') + ";multidegree=" + join(p.multidegree, ' ');
        }
      },
      pair.params());
}

std::string r_min_string(const InvariantReport& r) {
  return r.minimal_codimension ? std::to_string(*r.minimal_codimension) : "not computed";
}

// Shortest round-trip form, '.' separator.
std::string shortest(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

NumericCheck check_numeric(const Rational& exact, std::int64_t degree, const numgeo::IntegrationResult& result,
                           double tolerance_sigma) {
  NumericCheck check;
  check.exact = exact;
  check.result = result;
  check.tolerance_sigma = tolerance_sigma;
  const double se = std::max(result.standard_error, kNumericResolution);
  check.z_score = (result.mean_estimate - to_double(exact)) / se;
  const double vse = std::max(result.volume_standard_error, kNumericResolution);
  check.volume_z_score = (result.volume_ratio_estimate - static_cast<double>(degree)) / vse;
  check.passed = std::isfinite(check.z_score) && std::abs(check.z_score) <= tolerance_sigma;
  return check;
}

std::string fixed(double value, int digits) {
  char buf[128];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, digits);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

json to_json(const OutputRecord& record) {
  const InvariantReport& r = record.report;
  json j;
  j["family"] = std::string(family_name(record.pair.family()));
  j["label"] = record.pair.label();
  j["manifest"] = to_manifest(record.pair);
  j["n"] = r.n;
  j["degree"] = r.degree;
  j["canonical_intersection"] = r.canonical_intersection;
  j["sectional_genus"] = r.sectional_genus;
  j["h0"] = r.h0;
  j["delta_genus"] = r.delta_genus;
  j["sigma_bar_sq"] = {{"exact", to_exact_string(r.mean_sigma_sq)}, {"decimal", to_decimal_string(r.mean_sigma_sq)}};
  j["l2_ratio"] = {{"exact", to_exact_string(r.l2_ratio)}, {"decimal", to_decimal_string(r.l2_ratio)}};
  j["r_min"] = r.minimal_codimension ? json(*r.minimal_codimension) : json("not computed");
  j["loi_zedda"] = std::string(verdict_name(r.loi_zedda));
  j["tag"] = std::string(tag_name(r.tag));
  j["del_pezzo"] = r.del_pezzo;
  if (record.numeric) {
    const NumericCheck& c = *record.numeric;
    j["numeric"] = {
        {"estimate", c.result.mean_estimate},
        {"stderr", c.result.standard_error},
        {"samples", c.result.sample_count},
        {"seed", c.result.seed},
        {"z_score", c.z_score},
        {"volume_ratio", c.result.volume_ratio_estimate},
        {"volume_stderr", c.result.volume_standard_error},
        {"volume_z_score", c.volume_z_score},
        {"tolerance_sigma", c.tolerance_sigma},
        {"pass", c.passed},
    };
  }
  return j;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_header() {
  return "family,params,n,d,g,delta,h0,sigma_bar_sq_exact,sigma_bar_sq_decimal,l2_ratio,r_min,tag\r\n";
}

std::string csv_row(const OutputRecord& record) {
  const InvariantReport& r = record.report;
  const std::vector<std::string> fields = {
      std::string(family_name(record.pair.family())),
      params_string(record.pair),
      std::to_string(r.n),
      std::to_string(r.degree),
      std::to_string(r.sectional_genus),
      std::to_string(r.delta_genus),
      std::to_string(r.h0),
      to_exact_string(r.mean_sigma_sq),
      to_decimal_string(r.mean_sigma_sq),
      to_exact_string(r.l2_ratio),
      r_min_string(r),
      std::string(tag_name(r.tag)),
  };
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::string format_table(const std::vector<OutputRecord>& records) {
  const std::vector<std::string> header = {"pair", "n", "d", "g", "delta", "h0", "sigma_bar_sq", "l2_ratio",
                                           "r_min", "loi_zedda", "tag"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& rec : records) {
    const InvariantReport& r = rec.report;
    std::string tag(tag_name(r.tag));
    if (r.del_pezzo) tag += " (del Pezzo)";
    rows.push_back({rec.pair.label(), std::to_string(r.n), std::to_string(r.degree),
                    std::to_string(r.sectional_genus), std::to_string(r.delta_genus), std::to_string(r.h0),
                    to_exact_string(r.mean_sigma_sq), to_exact_string(r.l2_ratio), r_min_string(r),
                    std::string(verdict_name(r.loi_zedda)), tag});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out += c + 1 == cells.size() ? cells[c] : pad(cells[c], width[c] + 2);
    }
    return out + "\n";
  };
  std::string out = line(header);
  for (const auto& row : rows) out += line(row);
  return out;
}

std::string format_verification(const OutputRecord& record) {
  std::ostringstream out;
  out << record.pair.label() << "\n";
  out << "  exact sigma_bar_sq : " << to_exact_string(record.report.mean_sigma_sq) << " ("
      << to_decimal_string(record.report.mean_sigma_sq) << ")\n";
  if (!record.numeric) return out.str();
  const NumericCheck& c = *record.numeric;
  out << "  estimate           : " << fixed(c.result.mean_estimate, 6) << " +/- " << fixed(c.result.standard_error, 6)
      << " (" << c.result.sample_count << " samples, seed " << c.result.seed << ")\n";
  out << "  z-score            : " << fixed(c.z_score, 3) << "\n";
  out << "  volume ratio       : " << fixed(c.result.volume_ratio_estimate, 6) << " +/- "
      << fixed(c.result.volume_standard_error, 6) << " (degree " << record.report.degree << ", z "
      << fixed(c.volume_z_score, 3) << ")\n";
  out << "  effective samples  : " << shortest(std::round(c.result.effective_sample_size)) << "\n";
  out << "  result             : " << (c.passed ? "PASS" : "FAIL") << " (|z| <= " << shortest(c.tolerance_sigma)
      << ")\n";
  return out.str();
}

}  // namespace polrig::io
