#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace hyperdec {

// Exact coefficient carrier. Always normalized, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

bool is_integer(const Rational& r);

// Accepts "p" or "p/q" with optional leading sign; q must be a positive
// integer. Anything else (floats, empty, junk) yields nullopt.
std::optional<Rational> parse_rational(const std::string& text);

// "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& r);

double to_double(const Rational& r);

}  // namespace hyperdec
