#pragma once

#include <stdexcept>
#include <string>

namespace polrig {

/// A ring presentation, chart, or calibration setting that cannot be used.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its preconditions (mixed rings, n < 3 for the gap check, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact identity that must hold on every catalog pair was violated.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Pair parameters outside the family's domain. Carries the offending field name.
class InvalidPair : public std::invalid_argument {
 public:
  InvalidPair(std::string field, const std::string& message)
      : std::invalid_argument(message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The numerical verifier has no explicit chart for this family.
class NumericsUnsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical breakdown: indefinite metric, non-finite values, degenerate weights.
class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polrig
