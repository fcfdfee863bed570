#pragma once

#include "polrig/catalog.hpp"
#include "polrig/numgeo.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace polrig::io {

struct NumericCheck {
  Rational exact;
  numgeo::IntegrationResult result;
  double z_score = 0.0;
  double volume_z_score = 0.0;
  double tolerance_sigma = 3.0;
  bool passed = false;
};

struct OutputRecord {
  PolarizedPair pair;
  InvariantReport report;
  std::optional<NumericCheck> numeric;
};

/// Smallest error bar used for z-scores. Constant integrands (quadrics, Segre)
/// have batch-means error near zero, and the finite-difference resolution of the
/// pointwise pipeline is the meaningful scale there.
inline constexpr double kNumericResolution = 1e-5;

NumericCheck check_numeric(const Rational& exact, std::int64_t degree, const numgeo::IntegrationResult& result,
                           double tolerance_sigma);

/// Fixed-notation decimal with '.' separator, independent of the C++ locale.
std::string fixed(double value, int digits);

nlohmann::json to_json(const OutputRecord& record);
std::string csv_header();
std::string csv_row(const OutputRecord& record);
std::string csv_escape(const std::string& field);
std::string format_table(const std::vector<OutputRecord>& records);
std::string format_verification(const OutputRecord& record);

}  // namespace polrig::io
