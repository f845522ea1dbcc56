#pragma once

#include "hyperdec/multi_index.hpp"
#include "hyperdec/pochhammer.hpp"
#include "hyperdec/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hyperdec {

namespace detail {

template <class S>
S to_scalar(const Rational& r);
template <>
inline Rational to_scalar<Rational>(const Rational& r) {
  return r;
}
template <>
inline double to_scalar<double>(const Rational& r) {
  return to_double(r);
}

template <class S>
S abs_value(const S& v) {
  return v < S(0) ? S(-v) : v;
}

}  // namespace detail

// Graded enumeration of all multi-indices with total degree <= bound.
// Instances are shared per (arity, bound) through get().
class IndexSpace {
 public:
  IndexSpace(Arity arity, int bound);
  static std::shared_ptr<const IndexSpace> get(Arity arity, int bound);

  Arity arity() const { return arity_; }
  int bound() const { return bound_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& at(int rank) const { return indices_[rank]; }

  // -1 when the index lies outside the space.
  int rank(const MultiIndex& idx) const;
  // First rank whose total degree exceeds t.
  int layer_end(int t) const;
  int layer_begin(int t) const;

 private:
  Arity arity_;
  int bound_;
  std::vector<MultiIndex> indices_;
  std::vector<int> layer_begin_;
  std::map<std::vector<int>, int> rank_;
};

enum class Block { X, Y };

// Multivariate power series truncated by total degree across all variables.
// Dense over its IndexSpace; Scalar is Rational for exact verification and
// double for numeric evaluation, one code path for both.
template <class S>
class TruncatedSeries {
 public:
  TruncatedSeries(Arity arity, int degree)
      : space_(IndexSpace::get(arity, degree)),
        coeff_(space_->size(), S(0)) {}

  static TruncatedSeries from_fn(
      Arity arity, int degree,
      const std::function<S(const MultiIndex&)>& fn) {
    TruncatedSeries out(arity, degree);
    for (int r = 0; r < out.space_->size(); ++r)
      out.coeff_[r] = fn(out.space_->at(r));
    return out;
  }

  static TruncatedSeries constant(Arity arity, int degree, const S& value) {
    TruncatedSeries out(arity, degree);
    out.coeff_[out.space_->rank(zero_index(arity))] = value;
    return out;
  }

  Arity arity() const { return space_->arity(); }
  int degree() const { return space_->bound(); }
  const IndexSpace& space() const { return *space_; }

  S coeff(const MultiIndex& idx) const {
    int r = space_->rank(idx);
    return r < 0 ? S(0) : coeff_[r];
  }
  void set_coeff(const MultiIndex& idx, const S& value) {
    int r = space_->rank(idx);
    if (r < 0)
      throw std::invalid_argument("set_coeff: index outside the space");
    coeff_[r] = value;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    a += b;
    return a;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    a -= b;
    return a;
  }

  // Truncated Cauchy product; both factors must share arity and degree.
  TruncatedSeries operator*(const TruncatedSeries& o) const {
    require_same(o);
    TruncatedSeries out(arity(), degree());
    const IndexSpace& sp = *space_;
    for (int ia = 0; ia < sp.size(); ++ia) {
      const S& ca = coeff_[ia];
      if (ca == S(0)) continue;
      const MultiIndex& A = sp.at(ia);
      int rest = degree() - A.total();
      int end = sp.layer_end(rest);
      for (int ib = 0; ib < end; ++ib) {
        const S& cb = o.coeff_[ib];
        if (cb == S(0)) continue;
        const MultiIndex& B = sp.at(ib);
        MultiIndex C = A;
        for (std::size_t v = 0; v < C.x.size(); ++v) C.x[v] += B.x[v];
        for (std::size_t v = 0; v < C.y.size(); ++v) C.y[v] += B.y[v];
        out.coeff_[sp.rank(C)] += ca * cb;
      }
    }
    return out;
  }

  TruncatedSeries& scale(const S& f) {
    for (auto& c : coeff_) c *= f;
    return *this;
  }
  TruncatedSeries scaled(const S& f) const {
    TruncatedSeries out = *this;
    out.scale(f);
    return out;
  }

  // Multiply by the monomial with exponent vector `offset`, re-homed to a
  // space of degree new_degree. Terms pushed past the bound are dropped.
  TruncatedSeries shifted(const MultiIndex& offset, int new_degree) const {
    TruncatedSeries out(arity(), new_degree);
    for (int r = 0; r < space_->size(); ++r) {
      if (coeff_[r] == S(0)) continue;
      MultiIndex idx = space_->at(r);
      for (std::size_t v = 0; v < idx.x.size(); ++v) idx.x[v] += offset.x[v];
      for (std::size_t v = 0; v < idx.y.size(); ++v) idx.y[v] += offset.y[v];
      int t = out.space_->rank(idx);
      if (t >= 0) out.coeff_[t] += coeff_[r];
    }
    return out;
  }
  TruncatedSeries shifted(const MultiIndex& offset) const {
    return shifted(offset, degree());
  }

  // y -> -y: negate coefficients of odd y-total-degree.
  TruncatedSeries flip_y() const {
    TruncatedSeries out = *this;
    for (int r = 0; r < space_->size(); ++r)
      if (space_->at(r).total_y() % 2) out.coeff_[r] = -out.coeff_[r];
    return out;
  }

  // Partial derivative in flattened variable `var` (x-block then y-block).
  // The top layer of the result is beyond the truncation's knowledge and is
  // left zero; composing with the matching monomial multiply stays exact.
  TruncatedSeries derivative(int var) const {
    if (var < 0 || var >= arity().vars())
      throw std::invalid_argument("derivative: variable out of range");
    TruncatedSeries out(arity(), degree());
    for (int r = 0; r < space_->size(); ++r) {
      MultiIndex idx = space_->at(r);
      int& e = var < arity().m ? idx.x[var] : idx.y[var - arity().m];
      e += 1;
      int src = space_->rank(idx);
      if (src >= 0) out.coeff_[r] = S(e) * coeff_[src];
    }
    return out;
  }

  // Diagonal action of the paired inverse operators at argument h; the
  // eigenvalue depends only on (total_x, total_y). Throws PoleError when a
  // pole eigenvalue would scale a nonzero coefficient.
  TruncatedSeries apply_diagonal_xy(const Rational& h, bool inverted) const {
    std::map<std::pair<int, int>, Eigenvalue> cache;
    TruncatedSeries out = *this;
    for (int r = 0; r < space_->size(); ++r) {
      if (out.coeff_[r] == S(0)) continue;
      const MultiIndex& idx = space_->at(r);
      auto key = std::make_pair(idx.total_x(), idx.total_y());
      auto it = cache.find(key);
      if (it == cache.end()) {
        Eigenvalue e = inverted ? delta_eigen_xy(h, key.first, key.second)
                                : nabla_eigen_xy(h, key.first, key.second);
        it = cache.emplace(key, e).first;
      }
      if (it->second.is_pole)
        throw PoleError("diagonal operator pole at degree (" +
                        std::to_string(key.first) + "," +
                        std::to_string(key.second) + ")");
      out.coeff_[r] *= detail::to_scalar<S>(it->second.value);
    }
    return out;
  }

  // Diagonal action of the split pair separating the first x-variable from
  // the rest; defined on x-block-only series.
  TruncatedSeries apply_diagonal_split(const Rational& h, bool inverted) const {
    if (arity().n != 0 || arity().m < 1)
      throw std::invalid_argument(
          "apply_diagonal_split: needs an x-block-only series");
    std::map<std::pair<int, int>, Eigenvalue> cache;
    TruncatedSeries out = *this;
    for (int r = 0; r < space_->size(); ++r) {
      if (out.coeff_[r] == S(0)) continue;
      const MultiIndex& idx = space_->at(r);
      auto key = std::make_pair(idx.total(), idx.x[0]);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache
                 .emplace(key, nabla_eigen_split(h, key.first, key.second,
                                                 inverted))
                 .first;
      if (it->second.is_pole)
        throw PoleError("split operator pole at degree " +
                        std::to_string(key.first));
      out.coeff_[r] *= detail::to_scalar<S>(it->second.value);
    }
    return out;
  }

  // Literal derivative-sum action of the block Pochhammer operators, kept
  // independent of the diagonal eigenvalue route on purpose.
  //   X block: (-(d_1+...+d_m))_k f
  //            = (-1)^k k! sum_{|i|=k} x^i/i! d^k f / dx^i
  //   Y block: (s_1+...+s_n)_k f
  //            = k! sum_{l=1}^{k} C(k-1,l-1) sum_{|j|=l} y^j/j! d^l f / dy^j
  TruncatedSeries op_pochhammer_brute(int k, Block block) const {
    if (k < 0) throw std::invalid_argument("op_pochhammer_brute: k >= 0");
    if (k == 0) return *this;
    TruncatedSeries acc(arity(), degree());
    if (block == Block::X) {
      for_each_composition(k, arity().m, [&](const std::vector<int>& i) {
        acc += monomial_derivative_term(i, Block::X);
      });
      Rational lead = Rational(factorial(k));
      if (k % 2) lead = -lead;
      acc.scale(detail::to_scalar<S>(lead));
      return acc;
    }
    for (int l = 1; l <= k; ++l) {
      Rational cw(binomial(k - 1, l - 1));
      TruncatedSeries level(arity(), degree());
      for_each_composition(l, arity().n, [&](const std::vector<int>& j) {
        level += monomial_derivative_term(j, Block::Y);
      });
      acc += level.scale(detail::to_scalar<S>(cw));
    }
    acc.scale(detail::to_scalar<S>(Rational(factorial(k))));
    return acc;
  }

 private:
  void require_same(const TruncatedSeries& o) const {
    if (!(arity() == o.arity()) || degree() != o.degree())
      throw std::invalid_argument("series arity/degree mismatch");
  }

  // x^i/i! * d^|i| f / dx^i (or the y-block analogue).
  TruncatedSeries monomial_derivative_term(const std::vector<int>& exps,
                                           Block block) const {
    TruncatedSeries g = *this;
    int base = block == Block::X ? 0 : arity().m;
    Rational w(1);
    for (std::size_t v = 0; v < exps.size(); ++v) {
      for (int r = 0; r < exps[v]; ++r) g = g.derivative(base + static_cast<int>(v));
      w /= Rational(factorial(exps[v]));
    }
    MultiIndex off = zero_index(arity());
    if (block == Block::X)
      off.x = exps;
    else
      off.y = exps;
    return g.shifted(off).scale(detail::to_scalar<S>(w));
  }

  std::shared_ptr<const IndexSpace> space_;
  std::vector<S> coeff_;
};

template <class S>
struct Mismatch {
  MultiIndex index;
  S lhs;
  S rhs;
};

template <class S>
struct CompareResult {
  bool equal = true;
  int mismatch_count = 0;
  S max_abs_diff = S(0);
  std::vector<Mismatch<S>> sample;  // first few offending indices
};

template <class S>
CompareResult<S> compare(const TruncatedSeries<S>& a,
                         const TruncatedSeries<S>& b) {
  if (!(a.arity() == b.arity()) || a.degree() != b.degree())
    throw std::invalid_argument("compare: series arity/degree mismatch");
  CompareResult<S> out;
  const IndexSpace& sp = a.space();
  for (int r = 0; r < sp.size(); ++r) {
    const MultiIndex& idx = sp.at(r);
    S l = a.coeff(idx), rr = b.coeff(idx);
    if (l == rr) continue;
    out.equal = false;
    ++out.mismatch_count;
    out.max_abs_diff = std::max(out.max_abs_diff, detail::abs_value<S>(l - rr));
    if (out.sample.size() < 8) out.sample.push_back({idx, l, rr});
  }
  return out;
}

// Re-home a series onto a larger variable set: source variable v (flattened
// x-then-y order) becomes target flattened variable var_map[v].
template <class S>
TruncatedSeries<S> embed(const TruncatedSeries<S>& src, Arity target,
                         const std::vector<int>& var_map, int degree) {
  if (static_cast<int>(var_map.size()) != src.arity().vars())
    throw std::invalid_argument("embed: var_map size mismatch");
  TruncatedSeries<S> out(target, degree);
  const IndexSpace& sp = src.space();
  for (int r = 0; r < sp.size(); ++r) {
    const MultiIndex& idx = sp.at(r);
    S c = src.coeff(idx);
    if (c == S(0)) continue;
    MultiIndex t = zero_index(target);
    for (int v = 0; v < src.arity().vars(); ++v) {
      int e = v < src.arity().m ? idx.x[v] : idx.y[v - src.arity().m];
      int tv = var_map[v];
      if (tv < target.m)
        t.x[tv] += e;
      else
        t.y[tv - target.m] += e;
    }
    if (t.total() <= degree) out.set_coeff(t, c);
  }
  return out;
}

using RationalSeries = TruncatedSeries<Rational>;
using DoubleSeries = TruncatedSeries<double>;

}  // namespace hyperdec
