#include "hyperdec/functions.hpp"

#include <cmath>
#include <cstdint>

namespace hyperdec {

namespace {

template <class S>
S poch(const Rational& a, long k);
template <>
Rational poch<Rational>(const Rational& a, long k) {
  return pochhammer(a, k);
}
template <>
double poch<double>(const Rational& a, long k) {
  return pochhammer(to_double(a), k);
}

template <class S>
S fact(long n) {
  return detail::to_scalar<S>(Rational(factorial(n)));
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

// ===== factories =====

FunctionSpec gauss2f1(Rational a, Rational b, Rational c) {
  FunctionSpec f;
  f.family = Family::Gauss2F1;
  f.arity = {1, 0};
  f.b = {std::move(a), std::move(b)};
  f.c = {std::move(c)};
  return f;
}

FunctionSpec gen_pfq(std::vector<Rational> num, std::vector<Rational> den) {
  FunctionSpec f;
  f.family = Family::GenPFQ;
  f.arity = {1, 0};
  f.b = std::move(num);
  f.c = std::move(den);
  return f;
}

FunctionSpec horn_h2(Rational a, Rational b, Rational c, Rational d,
                     Rational e) {
  FunctionSpec f;
  f.family = Family::HornH2;
  f.arity = {1, 1};
  f.a = std::move(a);
  f.b = {std::move(b)};
  f.c = {std::move(e)};
  f.d = {std::move(c)};
  f.e = {std::move(d)};
  return f;
}

FunctionSpec humbert_eta2(Rational a, Rational b, Rational c, Rational d) {
  FunctionSpec f;
  f.family = Family::HumbertEta2;
  f.arity = {1, 1};
  f.a = std::move(a);
  f.b = {std::move(b)};
  f.c = {std::move(d)};
  f.d = {std::move(c)};
  return f;
}

FunctionSpec humbert_eta3(Rational a, Rational b, Rational d) {
  FunctionSpec f;
  f.family = Family::HumbertEta3;
  f.arity = {1, 1};
  f.a = std::move(a);
  f.b = {std::move(b)};
  f.c = {std::move(d)};
  return f;
}

FunctionSpec humbert_eta4(Rational a, Rational b, Rational d) {
  FunctionSpec f;
  f.family = Family::HumbertEta4;
  f.arity = {1, 1};
  f.a = std::move(a);
  f.c = {std::move(d)};
  f.d = {std::move(b)};
  return f;
}

FunctionSpec humbert_eta5(Rational a, Rational d) {
  FunctionSpec f;
  f.family = Family::HumbertEta5;
  f.arity = {1, 1};
  f.a = std::move(a);
  f.c = {std::move(d)};
  return f;
}

FunctionSpec humbert_eta11(Rational a, Rational b, Rational c, Rational d) {
  FunctionSpec f;
  f.family = Family::HumbertEta11;
  f.arity = {1, 1};
  f.a = std::move(a);
  f.c = {std::move(d)};
  f.d = {std::move(b)};
  f.e = {std::move(c)};
  return f;
}

FunctionSpec lauricella_fa(Rational a, std::vector<Rational> b,
                           std::vector<Rational> c) {
  require(!b.empty() && b.size() == c.size(),
          "lauricella_fa: need matching nonempty b, c");
  FunctionSpec f;
  f.family = Family::LauricellaFA;
  f.arity = {static_cast<int>(b.size()), 0};
  f.a = std::move(a);
  f.b = std::move(b);
  f.c = std::move(c);
  return f;
}

FunctionSpec lauricella_fb(std::vector<Rational> c, std::vector<Rational> b,
                           Rational a) {
  require(!b.empty() && b.size() == c.size(),
          "lauricella_fb: need matching nonempty c, b");
  FunctionSpec f;
  f.family = Family::LauricellaFB;
  f.arity = {static_cast<int>(b.size()), 0};
  f.a = std::move(a);
  f.b = std::move(b);
  f.c = std::move(c);
  return f;
}

FunctionSpec erdelyi_h(Rational a, std::vector<Rational> b,
                       std::vector<Rational> c, std::vector<Rational> d,
                       std::vector<Rational> e) {
  require(b.size() == c.size(), "erdelyi_h: need |b| == |c|");
  require(d.size() == e.size(), "erdelyi_h: need |d| == |e|");
  FunctionSpec f;
  f.family = Family::ErdelyiH;
  f.arity = {static_cast<int>(b.size()), static_cast<int>(d.size())};
  f.a = std::move(a);
  f.b = std::move(b);
  f.c = std::move(c);
  f.d = std::move(d);
  f.e = std::move(e);
  return f;
}

FunctionSpec confluent_ha(Rational a, std::vector<Rational> b,
                          std::vector<Rational> c, int n) {
  require(!b.empty() && b.size() == c.size() && n >= 0,
          "confluent_ha: need matching nonempty b, c and n >= 0");
  FunctionSpec f;
  f.family = Family::ConfluentHA;
  f.arity = {static_cast<int>(b.size()), n};
  f.a = std::move(a);
  f.b = std::move(b);
  f.c = std::move(c);
  return f;
}

FunctionSpec bessel_jn(Rational a, int n) {
  require(n >= 1, "bessel_jn: need n >= 1");
  FunctionSpec f;
  f.family = Family::BesselJn;
  f.arity = {0, n};
  f.a = std::move(a);
  return f;
}

// ===== coefficients =====

template <class S>
S coefficient(const FunctionSpec& f, const MultiIndex& idx) {
  if (!(idx.arity() == f.arity))
    throw std::invalid_argument("coefficient: index arity mismatch");
  const long p = idx.total_x();
  const long q = idx.total_y();
  S v(1);
  switch (f.family) {
    case Family::Gauss2F1:
    case Family::GenPFQ: {
      long i = idx.x[0];
      for (const auto& num : f.b) v *= poch<S>(num, i);
      for (const auto& den : f.c) v /= poch<S>(den, i);
      return v / fact<S>(i);
    }
    case Family::HornH2:
    case Family::HumbertEta2:
    case Family::HumbertEta3:
    case Family::HumbertEta4:
    case Family::HumbertEta5:
    case Family::HumbertEta11: {
      long i = idx.x[0], j = idx.y[0];
      v = poch<S>(f.a, i - j);
      for (const auto& num : f.b) v *= poch<S>(num, i);
      for (const auto& num : f.d) v *= poch<S>(num, j);
      for (const auto& num : f.e) v *= poch<S>(num, j);
      return v / (poch<S>(f.c[0], i) * fact<S>(i) * fact<S>(j));
    }
    case Family::LauricellaFA: {
      v = poch<S>(f.a, p);
      for (std::size_t s = 0; s < f.b.size(); ++s)
        v *= poch<S>(f.b[s], idx.x[s]) /
             (poch<S>(f.c[s], idx.x[s]) * fact<S>(idx.x[s]));
      return v;
    }
    case Family::LauricellaFB: {
      for (std::size_t s = 0; s < f.b.size(); ++s)
        v *= poch<S>(f.c[s], idx.x[s]) * poch<S>(f.b[s], idx.x[s]) /
             fact<S>(idx.x[s]);
      return v / poch<S>(f.a, p);
    }
    case Family::ErdelyiH: {
      v = poch<S>(f.a, p - q);
      for (std::size_t s = 0; s < f.b.size(); ++s)
        v *= poch<S>(f.b[s], idx.x[s]) /
             (poch<S>(f.c[s], idx.x[s]) * fact<S>(idx.x[s]));
      for (std::size_t t = 0; t < f.d.size(); ++t)
        v *= poch<S>(f.d[t], idx.y[t]) * poch<S>(f.e[t], idx.y[t]) /
             fact<S>(idx.y[t]);
      return v;
    }
    case Family::ConfluentHA: {
      v = poch<S>(f.a, p - q);
      for (std::size_t s = 0; s < f.b.size(); ++s)
        v *= poch<S>(f.b[s], idx.x[s]) /
             (poch<S>(f.c[s], idx.x[s]) * fact<S>(idx.x[s]));
      for (std::size_t t = 0; t < idx.y.size(); ++t) v /= fact<S>(idx.y[t]);
      return v;
    }
    case Family::BesselJn: {
      if (q % 2) v = -v;
      v /= poch<S>(f.a + 1, q);
      for (std::size_t t = 0; t < idx.y.size(); ++t) v /= fact<S>(idx.y[t]);
      return v;
    }
  }
  throw std::logic_error("coefficient: unknown family");
}

template Rational coefficient<Rational>(const FunctionSpec&,
                                        const MultiIndex&);
template double coefficient<double>(const FunctionSpec&, const MultiIndex&);

// ===== numeric evaluation =====

namespace {

// Signed coupling (a)_{i-j} reaches shift -L; poles sit at positive integers.
void check_coupling(const Rational& a, int L) {
  if (is_integer(a) && a >= 1 && a <= L)
    throw PoleError("coupling parameter " + format_rational(a) +
                    " poles within working degree " + std::to_string(L));
}

// Denominator (v)_t, 0 <= t < L: poles at integers in (-L, 0].
void check_denominator(const Rational& v, int L) {
  if (is_integer(v) && v <= 0 && v > -L)
    throw PoleError("denominator parameter " + format_rational(v) +
                    " poles within working degree " + std::to_string(L));
}

}  // namespace

void validate_params(const FunctionSpec& f, int working_degree) {
  const int L = working_degree;
  switch (f.family) {
    case Family::Gauss2F1:
    case Family::GenPFQ:
      for (const auto& den : f.c) check_denominator(den, L);
      return;
    case Family::HornH2:
    case Family::HumbertEta2:
    case Family::HumbertEta3:
    case Family::HumbertEta4:
    case Family::HumbertEta5:
    case Family::HumbertEta11:
      check_coupling(f.a, L);
      check_denominator(f.c[0], L);
      return;
    case Family::LauricellaFA:
      for (const auto& den : f.c) check_denominator(den, L);
      return;
    case Family::LauricellaFB:
      check_denominator(f.a, L);
      return;
    case Family::ErdelyiH:
    case Family::ConfluentHA:
      check_coupling(f.a, L);
      for (const auto& den : f.c) check_denominator(den, L);
      return;
    case Family::BesselJn:
      check_denominator(f.a + 1, L);
      return;
  }
}

bool in_domain(const FunctionSpec& f, const std::vector<double>& pt) {
  if (static_cast<int>(pt.size()) != f.arity.vars())
    throw std::invalid_argument("in_domain: point arity mismatch");
  auto ax = [&](int v) { return std::fabs(pt[v]); };
  switch (f.family) {
    case Family::Gauss2F1:
      return ax(0) < 1.0;
    case Family::GenPFQ:
      if (f.b.size() <= f.c.size()) return true;
      if (f.b.size() == f.c.size() + 1) return ax(0) < 1.0;
      return false;
    case Family::HornH2:
      return ax(0) < 1.0 && ax(1) * (1.0 + ax(0)) < 1.0;
    case Family::HumbertEta2:
    case Family::HumbertEta3:
      return ax(0) < 1.0;
    case Family::HumbertEta4:
      return ax(0) <= 4.0;  // experimental gate
    case Family::HumbertEta5:
      return true;
    case Family::HumbertEta11:
      return ax(1) < 1.0;
    case Family::LauricellaFA: {
      double s = 0;
      for (int v = 0; v < f.arity.m; ++v) s += ax(v);
      return s < 1.0;
    }
    case Family::LauricellaFB: {
      double mx = 0;
      for (int v = 0; v < f.arity.m; ++v) mx = std::max(mx, ax(v));
      return mx < 1.0;
    }
    case Family::ErdelyiH: {
      double mx = 0, my = 0;
      for (int v = 0; v < f.arity.m; ++v) mx = std::max(mx, ax(v));
      for (int v = 0; v < f.arity.n; ++v) my = std::max(my, ax(f.arity.m + v));
      return mx + my <= 0.25;  // conservative gate
    }
    case Family::ConfluentHA: {
      double s = 0;
      for (int v = 0; v < f.arity.m; ++v) s += ax(v);
      return s < 1.0;
    }
    case Family::BesselJn:
      return true;
  }
  return false;
}

double eval_numeric(const FunctionSpec& f, const std::vector<double>& pt,
                    const EvalOptions& opt, EvalDiagnostics* diag) {
  validate_params(f, opt.max_layers);
  if (!in_domain(f, pt))
    throw DomainError("point outside the stated convergence region");

  const int vars = f.arity.vars();
  std::vector<std::vector<double>> pw(vars, {1.0});
  double sum = 0.0;
  double comp = 0.0;
  int streak = 0;
  std::int64_t budget = 20'000'000;
  for (int d = 0; d <= opt.max_layers; ++d) {
    for (int v = 0; v < vars; ++v) pw[v].push_back(pw[v].back() * pt[v]);
    double layer = 0.0;
    MultiIndex idx = zero_index(f.arity);
    for_each_composition(d, vars, [&](const std::vector<int>& c) {
      for (int v = 0; v < f.arity.m; ++v) idx.x[v] = c[v];
      for (int v = 0; v < f.arity.n; ++v) idx.y[v] = c[f.arity.m + v];
      double term = coefficient<double>(f, idx);
      for (int v = 0; v < vars; ++v) term *= pw[v][c[v]];
      layer += term;
      --budget;
    });
    if (budget < 0)
      throw NonConvergence("term budget exhausted at layer " +
                           std::to_string(d));
    // Kahan-compensated accumulation keeps the value correctly rounded even
    // when the tolerance asks for the last representable digits.
    double y = layer - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (diag) {
      diag->layers = d + 1;
      diag->last_layer_mag = std::fabs(layer);
    }
    if (std::fabs(layer) < opt.tol * std::max(1.0, std::fabs(sum))) {
      if (++streak >= 3) return sum;
    } else {
      streak = 0;
    }
  }
  throw NonConvergence("no convergence within " +
                       std::to_string(opt.max_layers) + " layers");
}

// ===== names =====

namespace {

struct NameRow {
  Family family;
  const char* cli;
  const char* plain;
};

constexpr NameRow kNames[] = {
    {Family::Gauss2F1, "gauss2f1", "Gauss2F1"},
    {Family::GenPFQ, "gen-pfq", "GenPFQ"},
    {Family::HornH2, "horn-h2", "HornH2"},
    {Family::HumbertEta2, "humbert-eta2", "HumbertEta2"},
    {Family::HumbertEta3, "humbert-eta3", "HumbertEta3"},
    {Family::HumbertEta4, "humbert-eta4", "HumbertEta4"},
    {Family::HumbertEta5, "humbert-eta5", "HumbertEta5"},
    {Family::HumbertEta11, "humbert-eta11", "HumbertEta11"},
    {Family::LauricellaFA, "lauricella-fa", "LauricellaFA"},
    {Family::LauricellaFB, "lauricella-fb", "LauricellaFB"},
    {Family::ErdelyiH, "erdelyi-h", "ErdelyiH"},
    {Family::ConfluentHA, "confluent-ha", "ConfluentHA"},
    {Family::BesselJn, "bessel-jn", "BesselJn"},
};

}  // namespace

std::optional<Family> family_from_cli_name(const std::string& name) {
  for (const auto& row : kNames)
    if (name == row.cli && row.family != Family::GenPFQ) return row.family;
  return std::nullopt;
}

const char* cli_name(Family family) {
  for (const auto& row : kNames)
    if (row.family == family) return row.cli;
  return "?";
}

const char* family_name(Family family) {
  for (const auto& row : kNames)
    if (row.family == family) return row.plain;
  return "?";
}

}  // namespace hyperdec
