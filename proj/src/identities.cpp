#include "hyperdec/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hyperdec {

namespace {

// ---------- parameter access ----------

const std::vector<Rational>& slot(const ParamSet& ps, const std::string& name) {
  auto it = ps.find(name);
  if (it == ps.end())
    throw std::invalid_argument("missing parameter \"" + name + "\"");
  return it->second;
}

Rational one(const ParamSet& ps, const std::string& name) {
  const auto& v = slot(ps, name);
  if (v.size() != 1)
    throw std::invalid_argument("parameter \"" + name + "\" must be scalar");
  return v[0];
}

std::vector<Rational> many(const ParamSet& ps, const std::string& name,
                           int count) {
  const auto& v = slot(ps, name);
  if (static_cast<int>(v.size()) != count)
    throw std::invalid_argument("parameter \"" + name + "\" needs " +
                                std::to_string(count) + " entries");
  return v;
}

std::vector<Rational> add_each(std::vector<Rational> v,
                               const std::vector<int>& shift) {
  for (std::size_t s = 0; s < v.size(); ++s) v[s] += shift[s];
  return v;
}

// Universal outer-sum weight of the decomposition series,
//   (-1)^{k+l} (k-1)! / ((l-1)! l! (k-l)!),  1 <= l <= k.
// The inverse-direction displays write the sign (-1)^{k-l}; k+l and k-l have
// equal parity, so one formula serves both directions.
Rational outer_weight(int k, int l) {
  Rational w(factorial(k - 1));
  w /= Rational(factorial(l - 1)) * Rational(factorial(l)) *
       Rational(factorial(k - l));
  if ((k + l) % 2) w = -w;
  return w;
}

// ---------- the six coupled two-variable families ----------

enum class Root { H2, Eta2, Eta3, Eta4, Eta5, Eta11 };

// Left-hand-side family with parameters shifted as the inverse decomposition
// requires; (k,l) = (0,0) gives the plain family.
FunctionSpec tv_inner(Root root, const ParamSet& ps, int k, int l) {
  Rational a = one(ps, "a") - k + l;
  switch (root) {
    case Root::H2:
      return horn_h2(a, one(ps, "b") + l, one(ps, "c") + k, one(ps, "d") + k,
                     one(ps, "e") + l);
    case Root::Eta2:
      return humbert_eta2(a, one(ps, "b") + l, one(ps, "c") + k,
                          one(ps, "d") + l);
    case Root::Eta3:
      return humbert_eta3(a, one(ps, "b") + l, one(ps, "d") + l);
    case Root::Eta4:
      return humbert_eta4(a, one(ps, "b") + k, one(ps, "d") + l);
    case Root::Eta5:
      return humbert_eta5(a, one(ps, "d") + l);
    case Root::Eta11:
      return humbert_eta11(a, one(ps, "b") + k, one(ps, "c") + k,
                           one(ps, "d") + l);
  }
  throw std::logic_error("tv_inner");
}

FunctionSpec tv_family(Root root, const ParamSet& ps) {
  return tv_inner(root, ps, 0, 0);
}

// x-side factor of the product form, shifted by the outer index k.
FunctionSpec tv_xfac(Root root, const ParamSet& ps, int k) {
  Rational a = one(ps, "a") + k;
  switch (root) {
    case Root::H2:
      return gauss2f1(a, one(ps, "b") + k, one(ps, "e") + k);
    case Root::Eta2:
    case Root::Eta3:
      return gauss2f1(a, one(ps, "b") + k, one(ps, "d") + k);
    case Root::Eta4:
    case Root::Eta5:
    case Root::Eta11:
      return gen_pfq({a}, {one(ps, "d") + k});
  }
  throw std::logic_error("tv_xfac");
}

// y-side factor, shifted by the outer index l; its argument signs are applied
// by the callers (flip for -y).
FunctionSpec tv_yfac(Root root, const ParamSet& ps, int l) {
  Rational oma = Rational(1) - one(ps, "a") + l;
  switch (root) {
    case Root::H2:
      return gauss2f1(one(ps, "c") + l, one(ps, "d") + l, oma);
    case Root::Eta2:
      return gen_pfq({one(ps, "c") + l}, {oma});
    case Root::Eta3:
    case Root::Eta5:
      return gen_pfq({}, {oma});
    case Root::Eta4:
      return gen_pfq({one(ps, "b") + l}, {oma});
    case Root::Eta11:
      return gauss2f1(one(ps, "b") + l, one(ps, "c") + l, oma);
  }
  throw std::logic_error("tv_yfac");
}

// Family-specific weight of the forward decomposition term (k,l).
Rational tv_weight(Root root, const ParamSet& ps, int k, int l) {
  Rational oma = Rational(1) - one(ps, "a");
  Rational den = pochhammer(oma, l);
  switch (root) {
    case Root::H2:
      return pochhammer(one(ps, "b"), k) * pochhammer(one(ps, "c"), l) *
             pochhammer(one(ps, "d"), l) /
             (den * pochhammer(one(ps, "e"), k));
    case Root::Eta2:
      return pochhammer(one(ps, "b"), k) * pochhammer(one(ps, "c"), l) /
             (den * pochhammer(one(ps, "d"), k));
    case Root::Eta3:
      return pochhammer(one(ps, "b"), k) /
             (den * pochhammer(one(ps, "d"), k));
    case Root::Eta4:
      return pochhammer(one(ps, "b"), l) /
             (den * pochhammer(one(ps, "d"), k));
    case Root::Eta5:
      return Rational(1) / (den * pochhammer(one(ps, "d"), k));
    case Root::Eta11:
      return pochhammer(one(ps, "b"), l) * pochhammer(one(ps, "c"), l) /
             (den * pochhammer(one(ps, "d"), k));
  }
  throw std::logic_error("tv_weight");
}

// Family-specific weight of the inverse decomposition term (k,l).
Rational tv_inv_weight(Root root, const ParamSet& ps, int k, int l) {
  Rational oma = Rational(1) - one(ps, "a");
  Rational den = pochhammer(oma, k) * pochhammer(oma, k - l);
  switch (root) {
    case Root::H2:
      return pochhammer(one(ps, "b"), l) * pochhammer(one(ps, "c"), k) *
             pochhammer(one(ps, "d"), k) /
             (den * pochhammer(one(ps, "e"), l));
    case Root::Eta2:
      return pochhammer(one(ps, "b"), l) * pochhammer(one(ps, "c"), k) /
             (den * pochhammer(one(ps, "d"), l));
    case Root::Eta3:
      return pochhammer(one(ps, "b"), l) /
             (den * pochhammer(one(ps, "d"), l));
    case Root::Eta4:
      return pochhammer(one(ps, "b"), k) /
             (den * pochhammer(one(ps, "d"), l));
    case Root::Eta5:
      return Rational(1) / (den * pochhammer(one(ps, "d"), l));
    case Root::Eta11:
      return pochhammer(one(ps, "b"), k) * pochhammer(one(ps, "c"), k) /
             (den * pochhammer(one(ps, "d"), l));
  }
  throw std::logic_error("tv_inv_weight");
}

// The inverse OPERATOR displays print per-family argument signs: the product
// side carries -y for Eta2/Eta11 and +y otherwise; the family side carries
// the opposite sign.
bool tv_opinv_lhs_yneg(Root root) {
  return root == Root::Eta2 || root == Root::Eta11;
}

struct ParsedId {
  enum class Shape {
    TvOp, TvOpInv, TvSeries, TvSeriesInv,  // coupled two-variable records
    FaOp, FbOp, FaLemma1,
    HaOp, HaOpInv, HaSeries, HaSeriesInv, HaLimit
  };
  Shape shape;
  Root root = Root::H2;  // meaningful for Tv* shapes only
};

ParsedId parse_id(const std::string& id) {
  using Shape = ParsedId::Shape;
  auto dot = id.find('.');
  std::string head = id.substr(0, dot);
  std::string tail = dot == std::string::npos ? "" : id.substr(dot + 1);
  if (head == "FA") {
    if (tail == "op") return {Shape::FaOp};
    if (tail == "lemma1") return {Shape::FaLemma1};
  } else if (head == "FB") {
    if (tail == "op") return {Shape::FbOp};
  } else if (head == "HA") {
    if (tail == "op") return {Shape::HaOp};
    if (tail == "op.inv") return {Shape::HaOpInv};
    if (tail == "series") return {Shape::HaSeries};
    if (tail == "series.inv") return {Shape::HaSeriesInv};
    if (tail == "limit") return {Shape::HaLimit};
  } else {
    Root root;
    if (head == "H2") root = Root::H2;
    else if (head == "Eta2") root = Root::Eta2;
    else if (head == "Eta3") root = Root::Eta3;
    else if (head == "Eta4") root = Root::Eta4;
    else if (head == "Eta5") root = Root::Eta5;
    else if (head == "Eta11") root = Root::Eta11;
    else throw std::invalid_argument("unknown identity id \"" + id + "\"");
    if (tail == "op") return {Shape::TvOp, root};
    if (tail == "op.inv") return {Shape::TvOpInv, root};
    if (tail == "series") return {Shape::TvSeries, root};
    if (tail == "series.inv") return {Shape::TvSeriesInv, root};
  }
  throw std::invalid_argument("unknown identity id \"" + id + "\"");
}

// ---------- series assembly helpers ----------

constexpr Arity kTwoVar{1, 1};

// Product of a function of x and a function of y on the (1,1) space.
template <class S>
TruncatedSeries<S> product2(const FunctionSpec& xf, const FunctionSpec& yf,
                            int degree, bool y_neg) {
  auto X = embed(truncate<S>(xf, degree), kTwoVar, {0}, degree);
  auto Y = embed(truncate<S>(yf, degree), kTwoVar, {1}, degree);
  if (y_neg) Y = Y.flip_y();
  return X * Y;
}

// Product of an x-block function (arity (m,0)) and a y-block function
// (arity (0,n)) on the (m,n) space.
template <class S>
TruncatedSeries<S> product_xy(const FunctionSpec& xf, const FunctionSpec& yf,
                              Arity ar, int degree) {
  std::vector<int> xmap(ar.m), ymap(ar.n);
  std::iota(xmap.begin(), xmap.end(), 0);
  std::iota(ymap.begin(), ymap.end(), ar.m);
  return embed(truncate<S>(xf, degree), ar, xmap, degree) *
         embed(truncate<S>(yf, degree), ar, ymap, degree);
}

void require_two_var(Arity ar) {
  if (!(ar == kTwoVar))
    throw std::invalid_argument("record is fixed at one x and one y variable");
}

void require_x_block(Arity ar, int min_m) {
  if (ar.n != 0 || ar.m < min_m)
    throw std::invalid_argument("record needs an x-block arity with at least " +
                                std::to_string(min_m) + " variables");
}

void require_xy(Arity ar) {
  if (ar.m < 1 || ar.n < 1)
    throw std::invalid_argument("record needs x and y variables");
}

// ---------- FA / FB ----------

template <class S>
TruncatedSeries<S> build_fa_op_rhs(const ParamSet& ps, Arity ar, int degree) {
  Rational a = one(ps, "a");
  auto b = many(ps, "b", ar.m);
  auto c = many(ps, "c", ar.m);
  auto head = embed(truncate<S>(gauss2f1(a, b[0], c[0]), degree), ar, {0},
                    degree);
  std::vector<Rational> bt(b.begin() + 1, b.end());
  std::vector<Rational> ct(c.begin() + 1, c.end());
  std::vector<int> tail_map(ar.m - 1);
  std::iota(tail_map.begin(), tail_map.end(), 1);
  auto tail = embed(truncate<S>(lauricella_fa(a, bt, ct), degree), ar,
                    tail_map, degree);
  return (head * tail).apply_diagonal_split(a, false);
}

template <class S>
TruncatedSeries<S> build_fb_op_rhs(const ParamSet& ps, Arity ar, int degree) {
  Rational a = one(ps, "a");
  auto b = many(ps, "b", ar.m);
  auto c = many(ps, "c", ar.m);
  auto head = embed(truncate<S>(gauss2f1(c[0], b[0], a), degree), ar, {0},
                    degree);
  std::vector<Rational> bt(b.begin() + 1, b.end());
  std::vector<Rational> ct(c.begin() + 1, c.end());
  std::vector<int> tail_map(ar.m - 1);
  std::iota(tail_map.begin(), tail_map.end(), 1);
  auto tail = embed(truncate<S>(lauricella_fb(ct, bt, a), degree), ar,
                    tail_map, degree);
  return (head * tail).apply_diagonal_split(a, true);
}

// Triangular index family n_{i,j}, 2 <= i <= j <= m, flattened in
// lexicographic (i,j) order.
struct TriangularIndex {
  int m;
  std::vector<std::pair<int, int>> pos;  // (i,j) per flat slot
  explicit TriangularIndex(int m_) : m(m_) {
    for (int i = 2; i <= m; ++i)
      for (int j = i; j <= m; ++j) pos.push_back({i, j});
  }
  int count() const { return static_cast<int>(pos.size()); }
  long at(const std::vector<int>& n, int i, int j) const {
    if (i < 2 || j < i || j > m) return 0;
    for (std::size_t s = 0; s < pos.size(); ++s)
      if (pos[s] == std::make_pair(i, j)) return n[s];
    return 0;
  }
  // M2(k) = sum_{i=2..k} n_{i,k} + sum_{i=k+1..m} n_{k+1,i}
  long M2(const std::vector<int>& n, int k) const {
    long v = 0;
    for (int i = 2; i <= k; ++i) v += at(n, i, k);
    for (int i = k + 1; i <= m; ++i) v += at(n, k + 1, i);
    return v;
  }
  // N2(k) = sum_{i=2..k+1} sum_{j=i..m} n_{i,j}
  long N2(const std::vector<int>& n, int k) const {
    long v = 0;
    for (int i = 2; i <= k + 1; ++i)
      for (int j = i; j <= m; ++j) v += at(n, i, j);
    return v;
  }
};

template <class S>
TruncatedSeries<S> build_fa_lemma1_rhs(const ParamSet& ps, Arity ar,
                                       int degree) {
  Rational a = one(ps, "a");
  auto b = many(ps, "b", ar.m);
  auto c = many(ps, "c", ar.m);
  TriangularIndex tri(ar.m);
  TruncatedSeries<S> acc(ar, degree);
  // Each n_{i,j} raises the monomial degree by 2 (it enters two of the M2's),
  // so configurations with |n| > degree/2 contribute nothing.
  for (int total = 0; 2 * total <= degree; ++total) {
    for_each_composition(total, tri.count(), [&](const std::vector<int>& n) {
      std::vector<int> M(ar.m);
      long shift_total = 0;
      for (int k = 1; k <= ar.m; ++k) {
        M[k - 1] = static_cast<int>(tri.M2(n, k));
        shift_total += M[k - 1];
      }
      if (shift_total > degree) return;
      int rest = degree - static_cast<int>(shift_total);
      Rational w = pochhammer(a, tri.N2(n, ar.m));
      for (int v : n) w /= Rational(factorial(v));
      for (int k = 1; k <= ar.m; ++k)
        w *= pochhammer(b[k - 1], M[k - 1]) / pochhammer(c[k - 1], M[k - 1]);
      auto term = TruncatedSeries<S>::constant(ar, rest, S(1));
      for (int k = 1; k <= ar.m; ++k) {
        long N = tri.N2(n, k);
        auto factor = embed(
            truncate<S>(gauss2f1(a + N, b[k - 1] + M[k - 1],
                                 c[k - 1] + M[k - 1]),
                        rest),
            ar, {k - 1}, rest);
        term = term * factor;
      }
      MultiIndex off = zero_index(ar);
      off.x = M;
      acc += term.scaled(detail::to_scalar<S>(w)).shifted(off, degree);
    });
  }
  return acc;
}

// ---------- HA ----------

template <class S>
TruncatedSeries<S> build_ha_product_lhs(const ParamSet& ps, Arity ar,
                                        int degree) {
  Rational a = one(ps, "a");
  return product_xy<S>(lauricella_fa(a, many(ps, "b", ar.m),
                                     many(ps, "c", ar.m)),
                       bessel_jn(-a, ar.n), ar, degree);
}

template <class S>
TruncatedSeries<S> build_ha_series_rhs(const ParamSet& ps, Arity ar,
                                       int degree) {
  Rational a = one(ps, "a");
  auto b = many(ps, "b", ar.m);
  auto c = many(ps, "c", ar.m);
  auto acc = build_ha_product_lhs<S>(ps, ar, degree);
  std::vector<int> ymap(ar.n);
  std::iota(ymap.begin(), ymap.end(), ar.m);
  for (int k = 1; k <= degree; ++k) {
    for (int l = 1; l <= k && k + l <= degree; ++l) {
      int rest = degree - k - l;
      // k! (k-1)! / ((l-1)! (k-l)! (1-a)_l), with the x^i/i!, y^j/j!
      // factors folded in per composition.
      Rational base = Rational(factorial(k)) * Rational(factorial(k - 1));
      base /= Rational(factorial(l - 1)) * Rational(factorial(k - l)) *
              pochhammer(Rational(1) - a, l);
      if ((k + l) % 2) base = -base;
      auto jfac = embed(truncate<S>(bessel_jn(-a + l, ar.n), rest), ar, ymap,
                        rest);
      for_each_composition(k, ar.m, [&](const std::vector<int>& i) {
        Rational wi = base;
        for (int s = 0; s < ar.m; ++s)
          wi *= pochhammer(b[s], i[s]) /
                (pochhammer(c[s], i[s]) * Rational(factorial(i[s])));
        std::vector<int> xmap(ar.m);
        std::iota(xmap.begin(), xmap.end(), 0);
        auto fafac = embed(
            truncate<S>(lauricella_fa(a + k, add_each(b, i), add_each(c, i)),
                        rest),
            ar, xmap, rest);
        auto prod = fafac * jfac;
        for_each_composition(l, ar.n, [&](const std::vector<int>& j) {
          Rational w = wi;
          for (int t = 0; t < ar.n; ++t) w /= Rational(factorial(j[t]));
          MultiIndex off = zero_index(ar);
          off.x = i;
          off.y = j;
          acc += prod.scaled(detail::to_scalar<S>(w)).shifted(off, degree);
        });
      });
    }
  }
  return acc;
}

template <class S>
TruncatedSeries<S> build_ha_series_inv_rhs(const ParamSet& ps, Arity ar,
                                           int degree,
                                           const BuildOptions& opt) {
  Rational a = one(ps, "a");
  auto b = many(ps, "b", ar.m);
  auto c = many(ps, "c", ar.m);
  auto acc = truncate<S>(confluent_ha(a, b, c, ar.n), degree);
  std::vector<int> ymap(ar.n);
  std::iota(ymap.begin(), ymap.end(), ar.m);
  for (int k = 1; k <= degree; ++k) {
    for (int l = 1; l <= k && k + l <= degree; ++l) {
      int rest = degree - k - l;
      Rational base = Rational(factorial(k)) * Rational(factorial(k - 1)) *
                      pochhammer(a, l - k);
      base /= Rational(factorial(l - 1)) * Rational(factorial(k - l)) *
              pochhammer(Rational(1) - a, k);
      if (opt.apply_errata && k % 2) base = -base;
      TruncatedSeries<S> jfac(ar, rest);
      if (!opt.apply_errata)
        jfac = embed(truncate<S>(bessel_jn(-a + k, ar.n), rest), ar, ymap,
                     rest);
      for_each_composition(l, ar.m, [&](const std::vector<int>& i) {
        Rational wi = base;
        for (int s = 0; s < ar.m; ++s)
          wi *= pochhammer(b[s], i[s]) /
                (pochhammer(c[s], i[s]) * Rational(factorial(i[s])));
        auto inner = truncate<S>(
            confluent_ha(a + l - k,
                         opt.apply_errata ? add_each(b, i) : b,
                         opt.apply_errata ? add_each(c, i) : c, ar.n),
            rest);
        if (!opt.apply_errata) inner = inner * jfac;
        for_each_composition(k, ar.n, [&](const std::vector<int>& j) {
          Rational w = wi;
          for (int t = 0; t < ar.n; ++t) w /= Rational(factorial(j[t]));
          MultiIndex off = zero_index(ar);
          off.x = i;
          off.y = j;
          acc += inner.scaled(detail::to_scalar<S>(w)).shifted(off, degree);
        });
      });
    }
  }
  return acc;
}

// ---------- registry ----------

std::vector<ParamSlot> tv_slots(Root root) {
  using C = ParamSlot::Count;
  switch (root) {
    case Root::H2:
      return {{"a", C::One}, {"b", C::One}, {"c", C::One}, {"d", C::One},
              {"e", C::One}};
    case Root::Eta2:
    case Root::Eta11:
      return {{"a", C::One}, {"b", C::One}, {"c", C::One}, {"d", C::One}};
    case Root::Eta3:
    case Root::Eta4:
      return {{"a", C::One}, {"b", C::One}, {"d", C::One}};
    case Root::Eta5:
      return {{"a", C::One}, {"d", C::One}};
  }
  throw std::logic_error("tv_slots");
}

std::vector<ParamSlot> abc_slots() {
  using C = ParamSlot::Count;
  return {{"a", C::One}, {"b", C::PerX}, {"c", C::PerX}};
}

std::vector<IdentityRecord> make_registry() {
  std::vector<IdentityRecord> out;
  struct TvRow {
    Root root;
    const char* name;      // id prefix
    const char* family;    // LHS family of the forward records
    const char* product;   // LHS of the inverse records
    int first_eq;          // operator-form display number
  };
  const TvRow rows[] = {
      {Root::H2, "H2", "HornH2", "Gauss2F1*Gauss2F1", 314},
      {Root::Eta2, "Eta2", "HumbertEta2", "Gauss2F1*1F1", 316},
      {Root::Eta3, "Eta3", "HumbertEta3", "Gauss2F1*0F1", 318},
      {Root::Eta4, "Eta4", "HumbertEta4", "1F1*1F1", 320},
      {Root::Eta5, "Eta5", "HumbertEta5", "1F1*0F1", 322},
      {Root::Eta11, "Eta11", "HumbertEta11", "1F1*Gauss2F1", 324},
  };
  auto eq = [](int n) { return "Eq.(" + std::to_string(n) + ")"; };
  for (const auto& r : rows) {
    std::string name = r.name;
    out.push_back({name + ".op", r.family, RhsKind::OperatorForm,
                   eq(r.first_eq), {}, tv_slots(r.root), false});
    out.push_back({name + ".op.inv", r.product, RhsKind::OperatorForm,
                   eq(r.first_eq + 1), {}, tv_slots(r.root), false});
    int series_eq = r.first_eq + 12;  // 314->326, ..., 324->336
    std::vector<std::string> inv_errata;
    if (r.root == Root::Eta5)
      inv_errata = {"Eq.(335): leading term corrected from the printed "
                    "(a,b;d) signature to the family's (a;d); the printed "
                    "reading fails first at index (0,1) whenever b != 1"};
    out.push_back({name + ".series", r.family, RhsKind::SeriesForm,
                   eq(series_eq), {}, tv_slots(r.root), false});
    out.push_back({name + ".series.inv", r.product, RhsKind::SeriesForm,
                   eq(series_eq + 1), inv_errata, tv_slots(r.root), false});
  }
  out.push_back({"FA.op", "LauricellaFA", RhsKind::OperatorForm, "Eq.(241)",
                 {}, abc_slots(), true});
  out.push_back({"FB.op", "LauricellaFB", RhsKind::OperatorForm,
                 "below Eq.(241)", {}, abc_slots(), true});
  out.push_back({"FA.lemma1", "LauricellaFA", RhsKind::SeriesForm, "Lemma 1",
                 {}, abc_slots(), true});
  out.push_back({"HA.op", "ConfluentHA", RhsKind::OperatorForm, "Eq.(46)", {},
                 abc_slots(), true});
  out.push_back({"HA.op.inv", "LauricellaFA*BesselJn", RhsKind::OperatorForm,
                 "Eq.(47)", {}, abc_slots(), true});
  out.push_back({"HA.series", "ConfluentHA", RhsKind::SeriesForm, "Eq.(455)",
                 {}, abc_slots(), true});
  out.push_back(
      {"HA.series.inv", "LauricellaFA*BesselJn", RhsKind::SeriesForm,
       "Eq.(456)",
       {"Eq.(456): trailing argument list corrected from (x) to (x,y)",
        "Eq.(456): term sign corrected by (-1)^k; as printed, the expansion "
        "fails at total degree 2 for every parameter choice",
        "Eq.(456): inner parameters shifted to b+i, c+i to match the "
        "derivative recursion",
        "Eq.(456): spurious trailing Bessel factor removed"},
       abc_slots(), true});
  out.push_back({"HA.limit", "ErdelyiH", RhsKind::LimitForm, "confluence of H",
                 {}, abc_slots(), true});
  return out;
}

}  // namespace

const char* rhs_kind_name(RhsKind kind) {
  switch (kind) {
    case RhsKind::OperatorForm:
      return "operator-form";
    case RhsKind::SeriesForm:
      return "series-form";
    case RhsKind::LimitForm:
      return "limit-form";
  }
  return "?";
}

const std::vector<IdentityRecord>& identity_registry() {
  static const std::vector<IdentityRecord> registry = make_registry();
  return registry;
}

const IdentityRecord* find_identity(const std::string& id) {
  for (const auto& rec : identity_registry())
    if (rec.id == id) return &rec;
  return nullptr;
}

// ---------- builders ----------

template <class S>
TruncatedSeries<S> build_lhs(const std::string& id, const ParamSet& ps,
                             Arity ar, int degree, const BuildOptions&) {
  using Shape = ParsedId::Shape;
  ParsedId p = parse_id(id);
  switch (p.shape) {
    case Shape::TvOp:
    case Shape::TvSeries:
      require_two_var(ar);
      return truncate<S>(tv_family(p.root, ps), degree);
    case Shape::TvOpInv:
      require_two_var(ar);
      return product2<S>(tv_xfac(p.root, ps, 0), tv_yfac(p.root, ps, 0),
                         degree, tv_opinv_lhs_yneg(p.root));
    case Shape::TvSeriesInv:
      require_two_var(ar);
      return product2<S>(tv_xfac(p.root, ps, 0), tv_yfac(p.root, ps, 0),
                         degree, false);
    case Shape::FaOp:
    case Shape::FaLemma1:
      require_x_block(ar, p.shape == Shape::FaOp ? 2 : 1);
      return truncate<S>(lauricella_fa(one(ps, "a"), many(ps, "b", ar.m),
                                       many(ps, "c", ar.m)),
                         degree);
    case Shape::FbOp:
      require_x_block(ar, 2);
      return truncate<S>(lauricella_fb(many(ps, "c", ar.m),
                                       many(ps, "b", ar.m), one(ps, "a")),
                         degree);
    case Shape::HaOp:
    case Shape::HaSeries:
      require_xy(ar);
      return truncate<S>(confluent_ha(one(ps, "a"), many(ps, "b", ar.m),
                                      many(ps, "c", ar.m), ar.n),
                         degree);
    case Shape::HaOpInv:
    case Shape::HaSeriesInv:
      require_xy(ar);
      return build_ha_product_lhs<S>(ps, ar, degree);
    case Shape::HaLimit:
      throw std::invalid_argument("HA.limit is a numeric-only record");
  }
  throw std::logic_error("build_lhs");
}

template <class S>
TruncatedSeries<S> build_rhs(const std::string& id, const ParamSet& ps,
                             Arity ar, int degree, const BuildOptions& opt) {
  using Shape = ParsedId::Shape;
  ParsedId p = parse_id(id);
  switch (p.shape) {
    case Shape::TvOp:
      require_two_var(ar);
      return product2<S>(tv_xfac(p.root, ps, 0), tv_yfac(p.root, ps, 0),
                         degree, true)
          .apply_diagonal_xy(one(ps, "a"), false);
    case Shape::TvOpInv: {
      require_two_var(ar);
      auto fam = truncate<S>(tv_family(p.root, ps), degree);
      if (!tv_opinv_lhs_yneg(p.root)) fam = fam.flip_y();
      return fam.apply_diagonal_xy(one(ps, "a"), true);
    }
    case Shape::TvSeries: {
      require_two_var(ar);
      auto acc = product2<S>(tv_xfac(p.root, ps, 0), tv_yfac(p.root, ps, 0),
                             degree, true);
      for (int k = 1; k <= degree; ++k)
        for (int l = 1; l <= k && k + l <= degree; ++l) {
          int rest = degree - k - l;
          auto prod = product2<S>(tv_xfac(p.root, ps, k),
                                  tv_yfac(p.root, ps, l), rest, true);
          Rational w = outer_weight(k, l) * tv_weight(p.root, ps, k, l);
          MultiIndex off = zero_index(kTwoVar);
          off.x[0] = k;
          off.y[0] = l;
          acc += prod.scaled(detail::to_scalar<S>(w)).shifted(off, degree);
        }
      return acc;
    }
    case Shape::TvSeriesInv: {
      require_two_var(ar);
      FunctionSpec lead = tv_family(p.root, ps);
      if (p.root == Root::Eta5 && !opt.apply_errata) {
        // The display's leading term carries a dangling second parameter;
        // read literally it is the (a,b;d)-pattern family. A "b" entry in
        // the ParamSet feeds it; otherwise b = 2 keeps the control broken.
        Rational b = ps.count("b") ? one(ps, "b") : Rational(2);
        lead = humbert_eta4(one(ps, "a"), b, one(ps, "d"));
      }
      auto acc = truncate<S>(lead, degree).flip_y();
      for (int k = 1; k <= degree; ++k)
        for (int l = 1; l <= k && k + l <= degree; ++l) {
          int rest = degree - k - l;
          auto inner = truncate<S>(tv_inner(p.root, ps, k, l), rest).flip_y();
          Rational w = outer_weight(k, l) * tv_inv_weight(p.root, ps, k, l);
          MultiIndex off = zero_index(kTwoVar);
          off.x[0] = l;  // the inverse direction swaps the monomial powers
          off.y[0] = k;
          acc += inner.scaled(detail::to_scalar<S>(w)).shifted(off, degree);
        }
      return acc;
    }
    case Shape::FaOp:
      require_x_block(ar, 2);
      return build_fa_op_rhs<S>(ps, ar, degree);
    case Shape::FbOp:
      require_x_block(ar, 2);
      return build_fb_op_rhs<S>(ps, ar, degree);
    case Shape::FaLemma1:
      require_x_block(ar, 1);
      return build_fa_lemma1_rhs<S>(ps, ar, degree);
    case Shape::HaOp: {
      require_xy(ar);
      return build_ha_product_lhs<S>(ps, ar, degree)
          .apply_diagonal_xy(one(ps, "a"), false);
    }
    case Shape::HaOpInv: {
      require_xy(ar);
      auto fam = truncate<S>(confluent_ha(one(ps, "a"), many(ps, "b", ar.m),
                                          many(ps, "c", ar.m), ar.n),
                             degree);
      return fam.apply_diagonal_xy(one(ps, "a"), true);
    }
    case Shape::HaSeries:
      require_xy(ar);
      return build_ha_series_rhs<S>(ps, ar, degree);
    case Shape::HaSeriesInv:
      require_xy(ar);
      return build_ha_series_inv_rhs<S>(ps, ar, degree, opt);
    case Shape::HaLimit:
      throw std::invalid_argument("HA.limit is a numeric-only record");
  }
  throw std::logic_error("build_rhs");
}

template TruncatedSeries<Rational> build_lhs<Rational>(const std::string&,
                                                       const ParamSet&, Arity,
                                                       int,
                                                       const BuildOptions&);
template TruncatedSeries<double> build_lhs<double>(const std::string&,
                                                   const ParamSet&, Arity, int,
                                                   const BuildOptions&);
template TruncatedSeries<Rational> build_rhs<Rational>(const std::string&,
                                                       const ParamSet&, Arity,
                                                       int,
                                                       const BuildOptions&);
template TruncatedSeries<double> build_rhs<double>(const std::string&,
                                                   const ParamSet&, Arity, int,
                                                   const BuildOptions&);

RationalSeries build_rhs_operator(const std::string& id, const ParamSet& ps,
                                  Arity ar, int degree) {
  const IdentityRecord* rec = find_identity(id);
  if (!rec || rec->rhs_kind != RhsKind::OperatorForm)
    throw std::invalid_argument("not an operator-form id: " + id);
  return build_rhs<Rational>(id, ps, ar, degree);
}

RationalSeries build_rhs_series(const std::string& id, const ParamSet& ps,
                                Arity ar, int degree) {
  const IdentityRecord* rec = find_identity(id);
  if (!rec || rec->rhs_kind != RhsKind::SeriesForm)
    throw std::invalid_argument("not a series-form id: " + id);
  return build_rhs<Rational>(id, ps, ar, degree);
}

RationalSeries fa_lemma1_closed_m2(const ParamSet& ps, int degree) {
  Arity ar{2, 0};
  Rational a = one(ps, "a");
  auto b = many(ps, "b", 2);
  auto c = many(ps, "c", 2);
  RationalSeries acc(ar, degree);
  for (int t = 0; 2 * t <= degree; ++t) {
    int rest = degree - 2 * t;
    Rational w = pochhammer(a, t) * pochhammer(b[0], t) * pochhammer(b[1], t) /
                 (Rational(factorial(t)) * pochhammer(c[0], t) *
                  pochhammer(c[1], t));
    auto f1 = embed(truncate<Rational>(gauss2f1(a + t, b[0] + t, c[0] + t),
                                       rest),
                    ar, {0}, rest);
    auto f2 = embed(truncate<Rational>(gauss2f1(a + t, b[1] + t, c[1] + t),
                                       rest),
                    ar, {1}, rest);
    MultiIndex off = zero_index(ar);
    off.x = {t, t};
    acc += (f1 * f2).scaled(w).shifted(off, degree);
  }
  return acc;
}

// ---------- numeric ----------

double eval_at(const DoubleSeries& series, const std::vector<double>& pt) {
  Arity ar = series.arity();
  if (static_cast<int>(pt.size()) != ar.vars())
    throw std::invalid_argument("eval_at: point arity mismatch");
  const IndexSpace& sp = series.space();
  double sum = 0;
  for (int r = 0; r < sp.size(); ++r) {
    const MultiIndex& idx = sp.at(r);
    double c = series.coeff(idx);
    if (c == 0) continue;
    for (int v = 0; v < ar.m; ++v) c *= std::pow(pt[v], idx.x[v]);
    for (int v = 0; v < ar.n; ++v) c *= std::pow(pt[ar.m + v], idx.y[v]);
    sum += c;
  }
  return sum;
}

double eval_lhs_numeric(const std::string& id, const ParamSet& ps, Arity ar,
                        const std::vector<double>& pt,
                        const EvalOptions& opt) {
  using Shape = ParsedId::Shape;
  ParsedId p = parse_id(id);
  switch (p.shape) {
    case Shape::TvOp:
    case Shape::TvSeries:
      return eval_numeric(tv_family(p.root, ps), pt, opt);
    case Shape::TvOpInv:
    case Shape::TvSeriesInv: {
      bool yneg = p.shape == Shape::TvOpInv && tv_opinv_lhs_yneg(p.root);
      double y = yneg ? -pt[1] : pt[1];
      return eval_numeric(tv_xfac(p.root, ps, 0), {pt[0]}, opt) *
             eval_numeric(tv_yfac(p.root, ps, 0), {y}, opt);
    }
    case Shape::FaOp:
    case Shape::FaLemma1:
      return eval_numeric(lauricella_fa(one(ps, "a"), many(ps, "b", ar.m),
                                        many(ps, "c", ar.m)),
                          pt, opt);
    case Shape::FbOp:
      return eval_numeric(lauricella_fb(many(ps, "c", ar.m),
                                        many(ps, "b", ar.m), one(ps, "a")),
                          pt, opt);
    case Shape::HaOp:
    case Shape::HaSeries:
      return eval_numeric(confluent_ha(one(ps, "a"), many(ps, "b", ar.m),
                                       many(ps, "c", ar.m), ar.n),
                          pt, opt);
    case Shape::HaOpInv:
    case Shape::HaSeriesInv: {
      Rational a = one(ps, "a");
      std::vector<double> xp(pt.begin(), pt.begin() + ar.m);
      std::vector<double> yp(pt.begin() + ar.m, pt.end());
      return eval_numeric(lauricella_fa(a, many(ps, "b", ar.m),
                                        many(ps, "c", ar.m)),
                          xp, opt) *
             eval_numeric(bessel_jn(-a, ar.n), yp, opt);
    }
    case Shape::HaLimit: {
      // The x-block family with all y-side parameters at 1/eps, evaluated
      // with the y coordinates scaled by eps^2, approaches the confluent
      // family as eps -> 0.
      Rational inv_eps(1000);  // 1 / kLimitEpsilon
      std::vector<Rational> d(ar.n, inv_eps), e(ar.n, inv_eps);
      std::vector<double> scaled = pt;
      for (int v = 0; v < ar.n; ++v)
        scaled[ar.m + v] *= kLimitEpsilon * kLimitEpsilon;
      return eval_numeric(erdelyi_h(one(ps, "a"), many(ps, "b", ar.m),
                                    many(ps, "c", ar.m), d, e),
                          scaled, opt);
    }
  }
  throw std::logic_error("eval_lhs_numeric");
}

double build_rhs_numeric(const std::string& id, const ParamSet& ps, Arity ar,
                         const std::vector<double>& pt, double tol,
                         const BuildOptions& opt) {
  if (parse_id(id).shape == ParsedId::Shape::HaLimit) {
    // The record's "construction side" is the confluent family itself.
    return eval_numeric(confluent_ha(one(ps, "a"), many(ps, "b", ar.m),
                                     many(ps, "c", ar.m), ar.n),
                        pt, {});
  }
  std::vector<int> schedule;
  if (ar.vars() <= 2)
    schedule = {12, 16, 24, 32, 48, 64};
  else if (ar.vars() == 3)
    schedule = {8, 12, 16, 24};
  else
    schedule = {6, 8, 10, 12, 14};
  bool have_prev = false;
  double prev = 0;
  for (int degree : schedule) {
    double v = eval_at(build_rhs<double>(id, ps, ar, degree, opt), pt);
    if (have_prev &&
        std::fabs(v - prev) <= 0.1 * tol * std::max(1.0, std::fabs(v)))
      return v;
    prev = v;
    have_prev = true;
  }
  throw NonConvergence("right-hand side did not stabilize for " + id);
}

}  // namespace hyperdec
