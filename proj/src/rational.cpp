#include "hyperdec/rational.hpp"

#include <cctype>

namespace hyperdec {

bool is_integer(const Rational& r) { return denominator(r) == 1; }

namespace {

bool parse_bigint(const std::string& s, bool allow_sign, BigInt* out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '+' || s[0] == '-')) i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  *out = BigInt(s);
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  auto slash = text.find('/');
  BigInt num, den = 1;
  if (slash == std::string::npos) {
    if (!parse_bigint(text, true, &num)) return std::nullopt;
  } else {
    if (!parse_bigint(text.substr(0, slash), true, &num)) return std::nullopt;
    if (!parse_bigint(text.substr(slash + 1), false, &den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace hyperdec
