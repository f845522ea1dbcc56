#pragma once

#include "hyperdec/rational.hpp"

#include <stdexcept>
#include <string>

namespace hyperdec {

// A shifted-factorial product hit a zero divisor, e.g. (1)_{-1}.
class PoleError : public std::runtime_error {
 public:
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Shifted factorial (a)_k with signed k.
//   k >= 0:  a (a+1) ... (a+k-1), empty product = 1
//   k <  0:  1 / ((a-1)(a-2) ... (a+k)), equivalently (-1)^k / (1-a)_{-k}
// Throws PoleError when a negative shift hits a zero factor.
Rational pochhammer(const Rational& a, long k);
double pochhammer(double a, long k);

BigInt factorial(long n);
BigInt binomial(long n, long k);

// Diagonal value of an inverse-pair operator on a monomial, with Gamma-ratio
// pole semantics carried as a flag so callers can skip rather than abort.
struct Eigenvalue {
  Rational value;
  bool is_pole = false;
};

// Value of the paired operator on a monomial of x-total-degree p and
// y-total-degree q:
//   nabla: G(h) G(h+p-q) / (G(h+p) G(h-q)) = (h)_{p-q} / ((h)_p (h)_{-q})
//   delta: the exact reciprocal
// Pole cases: h a positive integer <= q, or a zero denominator.
Eigenvalue nabla_eigen_xy(const Rational& h, long p, long q);
Eigenvalue delta_eigen_xy(const Rational& h, long p, long q);

// Split-variable pair on a monomial of first-variable degree i1 and total
// degree p: (h)_p / ((h)_{i1} (h)_{p-i1}), reciprocal when inverted.
Eigenvalue nabla_eigen_split(const Rational& h, long p, long i1, bool inverted);

}  // namespace hyperdec
