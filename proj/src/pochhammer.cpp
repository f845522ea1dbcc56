#include "hyperdec/pochhammer.hpp"

namespace hyperdec {

Rational pochhammer(const Rational& a, long k) {
  Rational acc(1);
  if (k >= 0) {
    Rational f = a;
    for (long j = 0; j < k; ++j) {
      acc *= f;
      f += 1;
    }
    return acc;
  }
  Rational f = a - 1;
  for (long j = 0; j < -k; ++j) {
    if (f == 0)
      throw PoleError("pochhammer(" + format_rational(a) + ", " +
                      std::to_string(k) + "): zero factor at a-" +
                      std::to_string(j + 1));
    acc *= f;
    f -= 1;
  }
  return 1 / acc;
}

double pochhammer(double a, long k) {
  double acc = 1.0;
  if (k >= 0) {
    for (long j = 0; j < k; ++j) acc *= a + static_cast<double>(j);
    return acc;
  }
  for (long j = 1; j <= -k; ++j) acc *= a - static_cast<double>(j);
  return 1.0 / acc;
}

BigInt factorial(long n) {
  BigInt acc(1);
  for (long j = 2; j <= n; ++j) acc *= j;
  return acc;
}

BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt acc(1);
  for (long j = 1; j <= k; ++j) {
    acc *= n - k + j;
    acc /= j;
  }
  return acc;
}

Eigenvalue nabla_eigen_xy(const Rational& h, long p, long q) {
  try {
    Rational num = pochhammer(h, p - q);
    Rational den = pochhammer(h, p) * pochhammer(h, -q);
    if (den == 0) return {Rational(0), true};
    return {num / den, false};
  } catch (const PoleError&) {
    return {Rational(0), true};
  }
}

Eigenvalue delta_eigen_xy(const Rational& h, long p, long q) {
  try {
    Rational num = pochhammer(h, p) * pochhammer(h, -q);
    Rational den = pochhammer(h, p - q);
    if (den == 0) return {Rational(0), true};
    return {num / den, false};
  } catch (const PoleError&) {
    return {Rational(0), true};
  }
}

Eigenvalue nabla_eigen_split(const Rational& h, long p, long i1,
                             bool inverted) {
  if (i1 < 0 || i1 > p)
    throw std::invalid_argument("nabla_eigen_split: need 0 <= i1 <= p");
  Rational whole = pochhammer(h, p);
  Rational split = pochhammer(h, i1) * pochhammer(h, p - i1);
  if (!inverted) {
    if (split == 0) return {Rational(0), true};
    return {whole / split, false};
  }
  if (whole == 0) return {Rational(0), true};
  return {split / whole, false};
}

}  // namespace hyperdec
