#pragma once

#include <numeric>
#include <vector>

namespace hyperdec {

// Variable layout of a two-block series: m x-variables, n y-variables.
struct Arity {
  int m = 0;
  int n = 0;
  int vars() const { return m + n; }
  friend bool operator==(const Arity&, const Arity&) = default;
};

struct MultiIndex {
  std::vector<int> x;
  std::vector<int> y;

  int total_x() const { return std::accumulate(x.begin(), x.end(), 0); }
  int total_y() const { return std::accumulate(y.begin(), y.end(), 0); }
  int total() const { return total_x() + total_y(); }
  Arity arity() const {
    return {static_cast<int>(x.size()), static_cast<int>(y.size())};
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

inline MultiIndex zero_index(Arity a) {
  return {std::vector<int>(a.m, 0), std::vector<int>(a.n, 0)};
}

// Enumerates every split of `total` into `parts` non-negative entries.
template <class Fn>
void for_each_composition(int total, int parts, Fn&& fn) {
  if (parts == 0) {
    if (total == 0) {
      std::vector<int> empty;
      fn(empty);
    }
    return;
  }
  std::vector<int> c(parts, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == parts - 1) {
      c[pos] = left;
      fn(c);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, total);
}

}  // namespace hyperdec
