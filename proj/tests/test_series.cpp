#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperdec/series.hpp"

#include <random>

using namespace hyperdec;

namespace {

RationalSeries random_series(Arity ar, int degree, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 5);
  return RationalSeries::from_fn(ar, degree, [&](const MultiIndex&) {
    return Rational(num(rng), den(rng));
  });
}

MultiIndex idx2(int i, int j) { return {{i}, {j}}; }

}  // namespace

TEST_CASE("multiplication matches hand expansion") {
  const Arity ar{1, 1};
  // f = 1 + 2x + 3y, g = 1 - x + y/2
  auto f = RationalSeries::constant(ar, 4, Rational(1));
  f.set_coeff(idx2(1, 0), Rational(2));
  f.set_coeff(idx2(0, 1), Rational(3));
  auto g = RationalSeries::constant(ar, 4, Rational(1));
  g.set_coeff(idx2(1, 0), Rational(-1));
  g.set_coeff(idx2(0, 1), Rational(1, 2));
  auto p = f * g;
  CHECK(p.coeff(idx2(0, 0)) == Rational(1));
  CHECK(p.coeff(idx2(1, 0)) == Rational(1));
  CHECK(p.coeff(idx2(0, 1)) == Rational(7, 2));
  CHECK(p.coeff(idx2(1, 1)) == Rational(-2));
  CHECK(p.coeff(idx2(2, 0)) == Rational(-2));
  CHECK(p.coeff(idx2(0, 2)) == Rational(3, 2));
  CHECK(p.coeff(idx2(2, 1)) == Rational(0));
}

TEST_CASE("multiplication is commutative and distributes") {
  std::mt19937 rng(7);
  const Arity ar{2, 1};
  for (int rep = 0; rep < 4; ++rep) {
    auto a = random_series(ar, 5, rng);
    auto b = random_series(ar, 5, rng);
    auto c = random_series(ar, 5, rng);
    CHECK(compare(a * b, b * a).equal);
    CHECK(compare(a * (b + c), a * b + a * c).equal);
  }
}

TEST_CASE("truncation consistency under multiplication") {
  // Multiplying at high degree then ignoring the tail agrees with
  // multiplying lower-degree truncations on the shared window.
  std::mt19937 rng(11);
  const Arity ar{1, 1};
  auto a_hi = random_series(ar, 8, rng);
  auto b_hi = random_series(ar, 8, rng);
  auto lower = [&](const RationalSeries& s) {
    return RationalSeries::from_fn(
        ar, 5, [&](const MultiIndex& idx) { return s.coeff(idx); });
  };
  auto full = a_hi * b_hi;
  auto small = lower(a_hi) * lower(b_hi);
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; i + j <= 5; ++j)
      CHECK(full.coeff(idx2(i, j)) == small.coeff(idx2(i, j)));
}

TEST_CASE("shifted drops coefficients past the boundary") {
  const Arity ar{1, 1};
  auto f = RationalSeries::constant(ar, 3, Rational(0));
  f.set_coeff(idx2(0, 0), Rational(5));
  f.set_coeff(idx2(2, 1), Rational(7));
  auto g = f.shifted(idx2(1, 1));
  CHECK(g.coeff(idx2(1, 1)) == Rational(5));
  // (2,1) would land at (3,2), beyond degree 3: gone.
  bool found = false;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 3; ++j)
      if (g.coeff(idx2(i, j)) == Rational(7)) found = true;
  CHECK_FALSE(found);
  auto wide = f.shifted(idx2(1, 1), 5);
  CHECK(wide.degree() == 5);
  CHECK(wide.coeff(idx2(3, 2)) == Rational(7));
}

TEST_CASE("flip_y is an involution and only touches odd y-totals") {
  std::mt19937 rng(3);
  const Arity ar{1, 2};
  auto f = random_series(ar, 6, rng);
  auto g = f.flip_y();
  CHECK(compare(g.flip_y(), f).equal);
  MultiIndex probe{{1}, {1, 2}};  // total_y = 3, odd
  CHECK(g.coeff(probe) == -f.coeff(probe));
  MultiIndex even{{0}, {1, 1}};  // total_y = 2, even
  CHECK(g.coeff(even) == f.coeff(even));
}

TEST_CASE("derivative matches the monomial rule") {
  const Arity ar{2, 1};
  auto f = RationalSeries::constant(ar, 4, Rational(0));
  f.set_coeff({{2, 1}, {1}}, Rational(3));
  auto d0 = f.derivative(0);
  CHECK(d0.coeff({{1, 1}, {1}}) == Rational(6));
  auto d1 = f.derivative(1);
  CHECK(d1.coeff({{2, 0}, {1}}) == Rational(3));
  auto dy = f.derivative(2);
  CHECK(dy.coeff({{2, 1}, {0}}) == Rational(3));
  // Constant term of any derivative of a constant is zero.
  auto c = RationalSeries::constant(ar, 4, Rational(9));
  CHECK(compare(c.derivative(0), RationalSeries::constant(ar, 4, Rational(0)))
            .equal);
}

TEST_CASE("mixed partials commute") {
  std::mt19937 rng(17);
  const Arity ar{2, 2};
  auto f = random_series(ar, 6, rng);
  auto ab = f.derivative(0).derivative(3);
  auto ba = f.derivative(3).derivative(0);
  CHECK(compare(ab, ba).equal);
}

TEST_CASE("apply_diagonal_xy scales by the stated eigenvalue") {
  std::mt19937 rng(23);
  const Arity ar{2, 1};
  const Rational h(5, 3);
  auto f = random_series(ar, 5, rng);
  auto g = f.apply_diagonal_xy(h, false);
  auto probe = MultiIndex{{2, 1}, {1}};
  auto eig = nabla_eigen_xy(h, probe.total_x(), probe.total_y());
  REQUIRE_FALSE(eig.is_pole);
  CHECK(g.coeff(probe) == f.coeff(probe) * eig.value);
  SUBCASE("inverse undoes it") {
    CHECK(compare(g.apply_diagonal_xy(h, true), f).equal);
  }
  SUBCASE("pole on a nonzero coefficient throws") {
    auto bad = RationalSeries::constant(ar, 3, Rational(0));
    bad.set_coeff({{0, 0}, {1}}, Rational(1));  // (1)_{-1} poles at h = 1
    CHECK_THROWS_AS(bad.apply_diagonal_xy(Rational(1), false), PoleError);
  }
  SUBCASE("pole on an absent coefficient is harmless") {
    auto ok = RationalSeries::constant(ar, 3, Rational(4))
                  .apply_diagonal_xy(Rational(1), false);
    CHECK(ok.coeff(zero_index(ar)) == Rational(4));
  }
}

TEST_CASE("apply_diagonal_split scales by the split eigenvalue") {
  std::mt19937 rng(29);
  const Arity ar{3, 0};
  const Rational h(7, 4);
  auto f = random_series(ar, 5, rng);
  auto g = f.apply_diagonal_split(h, false);
  MultiIndex probe{{2, 1, 1}, {}};
  auto eig = nabla_eigen_split(h, probe.total(), probe.x[0], false);
  REQUIRE_FALSE(eig.is_pole);
  CHECK(g.coeff(probe) == f.coeff(probe) * eig.value);
  CHECK(compare(g.apply_diagonal_split(h, true), f).equal);
}

TEST_CASE("brute pochhammer operators act diagonally on monomials") {
  // X block: applying the order-k operator multiplies x^p y^q by (-p)_k.
  // Y block: same with (q)_k. Checked literally against the sum-of-partials
  // form for several arities and orders.
  for (Arity ar : {Arity{1, 1}, Arity{2, 1}, Arity{2, 2}}) {
    for (int k = 0; k <= 4; ++k) {
      auto f = RationalSeries::constant(ar, 6, Rational(0));
      MultiIndex mono = zero_index(ar);
      mono.x[0] = 2;
      if (ar.m > 1) mono.x[1] = 1;
      mono.y[0] = 2;
      if (ar.n > 1) mono.y[1] = 1;
      f.set_coeff(mono, Rational(3, 2));
      CAPTURE(ar.m);
      CAPTURE(ar.n);
      CAPTURE(k);

      auto fx = f.op_pochhammer_brute(k, Block::X);
      auto ex = f;
      ex.scale(pochhammer(Rational(-mono.total_x()), k));
      CHECK(compare(fx, ex).equal);

      auto fy = f.op_pochhammer_brute(k, Block::Y);
      auto ey = f;
      ey.scale(pochhammer(Rational(mono.total_y()), k));
      CHECK(compare(fy, ey).equal);
    }
  }
}

TEST_CASE("brute pochhammer operators act diagonally on random polynomials") {
  std::mt19937 rng(31);
  const Arity ar{2, 2};
  auto f = random_series(ar, 5, rng);
  for (int k = 0; k <= 3; ++k) {
    auto brute_x = f.op_pochhammer_brute(k, Block::X);
    auto brute_y = f.op_pochhammer_brute(k, Block::Y);
    auto expect_x = RationalSeries::from_fn(ar, 5, [&](const MultiIndex& i) {
      return f.coeff(i) * pochhammer(Rational(-i.total_x()), k);
    });
    auto expect_y = RationalSeries::from_fn(ar, 5, [&](const MultiIndex& i) {
      return f.coeff(i) * pochhammer(Rational(i.total_y()), k);
    });
    CHECK(compare(brute_x, expect_x).equal);
    CHECK(compare(brute_y, expect_y).equal);
  }
}

TEST_CASE("compare reports mismatches with samples") {
  const Arity ar{1, 1};
  auto f = RationalSeries::from_fn(
      ar, 3, [](const MultiIndex&) { return Rational(1); });
  auto g = f;
  g.set_coeff(idx2(1, 0), Rational(2));
  g.set_coeff(idx2(0, 2), Rational(0));
  auto r = compare(f, g);
  CHECK_FALSE(r.equal);
  CHECK(r.mismatch_count == 2);
  REQUIRE(!r.sample.empty());
  CHECK(r.sample.size() <= 8);
  CHECK(r.max_abs_diff == Rational(1));
  auto self = compare(g, g);
  CHECK(self.equal);
  CHECK(self.mismatch_count == 0);
}

TEST_CASE("embed maps variables injectively") {
  const Arity src{1, 1};
  auto f = RationalSeries::constant(src, 3, Rational(0));
  f.set_coeff(idx2(2, 1), Rational(5));
  // Send x -> second x-slot, y -> first y-slot of a (2,2) space.
  const Arity dst{2, 2};
  auto g = embed(f, dst, {1, 2}, 3);
  CHECK(g.coeff({{0, 2}, {1, 0}}) == Rational(5));
  CHECK(g.coeff({{2, 0}, {1, 0}}) == Rational(0));
  CHECK(g.coeff({{0, 2}, {0, 1}}) == Rational(0));
}

TEST_CASE("scaled leaves the source untouched") {
  const Arity ar{1, 0};
  auto f = RationalSeries::constant(ar, 2, Rational(3));
  auto g = f.scaled(Rational(1, 3));
  CHECK(f.coeff(zero_index(ar)) == Rational(3));
  CHECK(g.coeff(zero_index(ar)) == Rational(1));
}

TEST_CASE("index space layering") {
  const Arity ar{2, 1};
  auto space = IndexSpace::get(ar, 4);
  // Layer d holds exactly the indices of total degree d.
  for (int d = 0; d <= 4; ++d) {
    for (int r = space->layer_begin(d); r < space->layer_end(d); ++r) {
      CHECK(space->at(r).total() == d);
      CHECK(space->rank(space->at(r)) == r);
    }
  }
}
