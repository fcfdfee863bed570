#include "polrig/catalog.hpp"
#include "polrig/report_format.hpp"

#include <doctest.h>

#include <clocale>
#include <locale>

using namespace polrig;
using namespace polrig::io;

namespace {

OutputRecord record(const PolarizedPair& pair) { return {pair, invariant_report(pair), std::nullopt}; }

}  // namespace

TEST_CASE("csv escaping") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
  CHECK(csv_escape("") == "");
}

TEST_CASE("csv rows") {
  CHECK(csv_header() ==
        "family,params,n,d,g,delta,h0,sigma_bar_sq_exact,sigma_bar_sq_decimal,l2_ratio,r_min,tag\r\n");
  CHECK(csv_row(record(PolarizedPair::scroll({1, 2}))) ==
        "scroll,a=1 2,2,3,0,0,5,8/3,2.6666666666666665,8,2,rational_normal_scroll\r\n");
  CHECK(csv_row(record(PolarizedPair::projective_space(2, 2))) ==
        "projective_space,n=2;twist=2,2,4,0,0,6,3,3,12,3,veronese_surface\r\n");
  CHECK(csv_row(record(PolarizedPair::hypersurface(2, 3))) ==
        "hypersurface,n=2;degree=3,2,3,1,1,4,4,4,12,not computed,genus_one_boundary\r\n");
  CHECK(csv_row(record(PolarizedPair::product({1, 1}, {1, 1}))) ==
        "product,factors=1 1;multidegree=1 1,2,2,0,0,4,2,2,4,1,rational_normal_scroll\r\n");
}

TEST_CASE("json records") {
  const auto j = to_json(record(PolarizedPair::scroll({1, 2})));
  CHECK(j["family"] == "scroll");
  CHECK(j["degree"] == 3);
  CHECK(j["sigma_bar_sq"]["exact"] == "8/3");
  CHECK(j["l2_ratio"]["exact"] == "8");
  CHECK(j["r_min"] == 2);
  CHECK(j["loi_zedda"] == "above");
  CHECK(j["manifest"] == nlohmann::json::parse(R"({"family": "scroll", "a": [1, 2]})"));
  CHECK_FALSE(j.contains("numeric"));
  CHECK(to_json(record(PolarizedPair::hypersurface(2, 3)))["r_min"] == "not computed");
  CHECK(to_json(record(PolarizedPair::hypersurface(2, 3)))["del_pezzo"] == true);
}

TEST_CASE("table") {
  const auto table = format_table({record(PolarizedPair::scroll({1, 1})), record(PolarizedPair::hypersurface(2, 2)),
                                   record(PolarizedPair::hypersurface(2, 3))});
  CHECK(table.starts_with("pair"));
  CHECK(table.find("rational_normal_scroll") != std::string::npos);
  CHECK(table.find("genus_one_boundary (del Pezzo)") != std::string::npos);
  std::size_t lines = 0;
  for (char c : table) lines += c == '\n';
  CHECK(lines == 4);
}

TEST_CASE("fixed notation ignores the locale") {
  const std::locale previous = std::locale::global(std::locale::classic());
  try {
    std::locale::global(std::locale("de_DE.UTF-8"));
  } catch (const std::runtime_error&) {
    // Locale not installed; still check the classic output.
  }
  std::setlocale(LC_ALL, "de_DE.UTF-8");
  CHECK(fixed(2.5, 3) == "2.500");
  CHECK(fixed(-0.0001234, 6) == "-0.000123");
  CHECK(fixed(1234567.0, 1) == "1234567.0");
  std::locale::global(previous);
  std::setlocale(LC_ALL, "C");
}

TEST_CASE("numeric checks") {
  numgeo::IntegrationResult r;
  r.mean_estimate = 3.0029;
  r.standard_error = 0.001;
  r.volume_ratio_estimate = 4.002;
  r.volume_standard_error = 0.002;
  auto c = check_numeric(Rational(3), 4, r, 3.0);
  CHECK(c.z_score == doctest::Approx(2.9));
  CHECK(c.passed);
  CHECK(c.volume_z_score == doctest::Approx(1.0));
  c = check_numeric(Rational(3), 4, r, 2.8);
  CHECK_FALSE(c.passed);

  // A vanishing error bar falls back to the resolution floor.
  r.mean_estimate = 2.000001;
  r.standard_error = 0.0;
  c = check_numeric(Rational(2), 2, r, 3.0);
  CHECK(c.z_score == doctest::Approx(0.1));
  CHECK(c.passed);
  r.mean_estimate = 2.001;
  CHECK_FALSE(check_numeric(Rational(2), 2, r, 3.0).passed);

  r.mean_estimate = std::nan("");
  CHECK_FALSE(check_numeric(Rational(2), 2, r, 3.0).passed);
}

TEST_CASE("verification report") {
  auto rec = record(PolarizedPair::projective_space(2, 2));
  numgeo::IntegrationResult r;
  r.mean_estimate = 2.999;
  r.standard_error = 0.002;
  r.sample_count = 200000;
  r.seed = 42;
  r.volume_ratio_estimate = 4.001;
  r.volume_standard_error = 0.003;
  r.effective_sample_size = 12345.4;
  rec.numeric = check_numeric(rec.report.mean_sigma_sq, rec.report.degree, r, 3.0);
  CHECK(format_verification(rec) ==
        "projective_space(2,twist=2)\n"
        "  exact sigma_bar_sq : 3 (3)\n"
        "  estimate           : 2.999000 +/- 0.002000 (200000 samples, seed 42)\n"
        "  z-score            : -0.500\n"
        "  volume ratio       : 4.001000 +/- 0.003000 (degree 4, z 0.333)\n"
        "  effective samples  : 12345\n"
        "  result             : PASS (|z| <= 3)\n");
  CHECK(to_json(rec)["numeric"]["pass"] == true);
  CHECK(to_json(rec)["numeric"]["seed"] == 42);
}
