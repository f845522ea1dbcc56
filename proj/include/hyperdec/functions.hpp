#pragma once

#include "hyperdec/series.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperdec {

enum class Family {
  Gauss2F1,
  GenPFQ,
  HornH2,
  HumbertEta2,
  HumbertEta3,
  HumbertEta4,
  HumbertEta5,
  HumbertEta11,
  LauricellaFA,
  LauricellaFB,
  ErdelyiH,
  ConfluentHA,
  BesselJn,
};

// One series family instance. Slot meaning is per family (see the factory
// functions); the shared layout keeps b/c as the x-block parameter vectors
// and d/e as the y-block vectors where that reading applies.
struct FunctionSpec {
  Family family{};
  Arity arity{};
  Rational a;
  std::vector<Rational> b, c, d, e;
};

// F(a,b;c;x) = sum (a)_i (b)_i / ((c)_i i!) x^i
FunctionSpec gauss2f1(Rational a, Rational b, Rational c);
// pFq(num; den; x)
FunctionSpec gen_pfq(std::vector<Rational> num, std::vector<Rational> den);
// H2(a,b,c,d;e;x,y): (a)_{i-j} (b)_i (c)_j (d)_j / ((e)_i i! j!)
FunctionSpec horn_h2(Rational a, Rational b, Rational c, Rational d,
                     Rational e);
// Eta2(a,b,c;d): (a)_{i-j} (b)_i (c)_j / ((d)_i i! j!)
FunctionSpec humbert_eta2(Rational a, Rational b, Rational c, Rational d);
// Eta3(a,b;d): (a)_{i-j} (b)_i / ((d)_i i! j!)
FunctionSpec humbert_eta3(Rational a, Rational b, Rational d);
// Eta4(a,b;d): (a)_{i-j} (b)_j / ((d)_i i! j!)
FunctionSpec humbert_eta4(Rational a, Rational b, Rational d);
// Eta5(a;d): (a)_{i-j} / ((d)_i i! j!)
FunctionSpec humbert_eta5(Rational a, Rational d);
// Eta11(a,b,c;d): (a)_{i-j} (b)_j (c)_j / ((d)_i i! j!)
FunctionSpec humbert_eta11(Rational a, Rational b, Rational c, Rational d);
// FA(a, b; c; x) = sum (a)_{|i|} prod (b_s)_{i_s} / ((c_s)_{i_s} i_s!)
FunctionSpec lauricella_fa(Rational a, std::vector<Rational> b,
                           std::vector<Rational> c);
// FB(c, b; a; x) = sum prod (c_s)_{i_s} (b_s)_{i_s} / ((a)_{|i|} prod i_s!)
FunctionSpec lauricella_fb(std::vector<Rational> c, std::vector<Rational> b,
                           Rational a);
// H(a, b, d, e; c; x, y): (a)_{|i|-|j|} prod (b_s)_{i_s} (d_t)_{j_t}
// (e_t)_{j_t} / (prod (c_s)_{i_s} i_s! j_t!)
FunctionSpec erdelyi_h(Rational a, std::vector<Rational> b,
                       std::vector<Rational> c, std::vector<Rational> d,
                       std::vector<Rational> e);
// HA(a, b; c; x, y): (a)_{|i|-|j|} prod (b_s)_{i_s} / (prod (c_s)_{i_s}
// i_s! j_t!)
FunctionSpec confluent_ha(Rational a, std::vector<Rational> b,
                          std::vector<Rational> c, int n);
// J_a(y) = sum (-1)^{|j|} / ((1+a)_{|j|} prod j_t!) y^j
FunctionSpec bessel_jn(Rational a, int n);

// Full multiplier of x^i y^j including factorials and signs. Exact scalar
// throws PoleError naming the offending index.
template <class S>
S coefficient(const FunctionSpec& f, const MultiIndex& idx);

template <class S>
TruncatedSeries<S> truncate(const FunctionSpec& f, int degree) {
  return TruncatedSeries<S>::from_fn(
      f.arity, degree,
      [&f](const MultiIndex& idx) { return coefficient<S>(f, idx); });
}

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class NonConvergence : public std::runtime_error {
 public:
  explicit NonConvergence(const std::string& what)
      : std::runtime_error(what) {}
};

// Convergence region gate used by eval_numeric. Confluent directions are
// unrestricted; the HumbertEta4 x gate |x| <= 4 is an experimental bound.
bool in_domain(const FunctionSpec& f, const std::vector<double>& pt);

// Rejects denominator parameters that pole within the working degree.
void validate_params(const FunctionSpec& f, int working_degree);

struct EvalDiagnostics {
  int layers = 0;
  double last_layer_mag = 0.0;
};

struct EvalOptions {
  double tol = 1e-16;  // relative layer cutoff; the default drives the sum
                       // down to the last representable digits
  int max_layers = 400;
};

// Sums the series at pt by increasing total-degree layer, stopping when a
// full layer contributes below tol (relative) three layers in a row.
double eval_numeric(const FunctionSpec& f, const std::vector<double>& pt,
                    const EvalOptions& opt = {},
                    EvalDiagnostics* diag = nullptr);

// Kebab-case names used by the command line.
std::optional<Family> family_from_cli_name(const std::string& name);
const char* cli_name(Family family);
const char* family_name(Family family);

}  // namespace hyperdec
