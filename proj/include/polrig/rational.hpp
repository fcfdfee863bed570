#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace polrig {

// Exact rationals, always held in lowest terms with a positive denominator.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

/// "p/q", or "p" when the denominator is 1.
std::string to_exact_string(const Rational& r);

/// Shortest round-trip decimal of the nearest double, '.' as separator.
std::string to_decimal_string(const Rational& r);

double to_double(const Rational& r);

/// Throws ConsistencyError when r is not an integer or does not fit in 64 bits.
std::int64_t to_int64(const Rational& r, const char* what);

}  // namespace polrig
