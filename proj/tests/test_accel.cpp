#include <algorithm>
#include <vector>

#include "doctest.h"
#include "hyperaccel/accel.hpp"
#include "hyperaccel/errors.hpp"

using namespace hyperaccel;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

struct Triple {
  Rational a;
  long b;
  Rational n;
};

const std::vector<Triple>& grid() {
  static const std::vector<Triple> g = {
      {q(1, 2), 0, q(3, 2)}, {q(1, 2), 1, q(3, 2)},  {q(-1, 2), 3, q(1, 2)},
      {q(-1, 2), 4, q(1, 2)}, {q(-1, 2), 0, q(7, 2)}, {q(-1, 2), -1, q(5, 2)},
      {q(1), 0, q(2)},        {q(1), 1, q(5, 2)},
  };
  return g;
}

AccelParams params(const Triple& t) { return AccelParams::make(t.a, t.b, t.n); }

// Rising factorial by repeated products, kept separate from the library.
Rational rise(Rational x, long m) {
  Rational r(1);
  for (long i = 0; i < m; ++i) r *= x + Rational(i);
  return r;
}

Rational oracle_p2(Rational a, Rational n) {
  return Rational(2) * (Rational(4) * a - Rational(2) * n - Rational(1)) * (a - n - Rational(1)).pow(4);
}
// R(n,0) F(n,0) for b >= 0.
Rational oracle_g0(Rational a, long b, Rational n) {
  Rational bb(b);
  Rational rq = Rational(10) * a * a - Rational(8) * a * bb - Rational(14) * a * n - Rational(6) * a +
                Rational(2) * bb * bb + Rational(6) * bb * n + Rational(2) * bb +
                Rational(5) * n * n + Rational(4) * n + Rational(1);
  Rational r = (a - n - Rational(1)).pow(4) * rq / (Rational(2) * bb + n);
  Rational f = (rise(a, b) / rise(Rational(1) + n - a, b)).pow(4) * (n + Rational(2 * b));
  return r * f;
}

struct Expected {
  Rational z;
  std::vector<Rational> num, den;
  std::vector<long> poly;
  std::vector<long> factor_den;
};

std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

MultiPoly kpoly(const std::vector<long>& c) {
  std::vector<Rational> r;
  for (long x : c) r.push_back(Rational(x));
  return MultiPoly::univariate(Var::k, r);
}

void check_terms(const Reindexed& r, const Expected& e, const Rational& prefactor);

void check_matches(const Reindexed& r, const Expected& e, const Rational& prefactor) {
  check_terms(r, e, prefactor);
  CHECK(r.spec.ratio_z == e.z);
  CHECK(r.spec.num_params == sorted(e.num));
  CHECK(r.spec.den_params == sorted(e.den));
  CHECK(r.spec.factor_num == kpoly(e.poly));
  CHECK(r.spec.factor_den == (e.factor_den.empty() ? MultiPoly(Rational(1)) : kpoly(e.factor_den)));
  CHECK(r.spec.prefactor == prefactor);
}

SeriesSpec to_spec(const Expected& e) {
  SeriesSpec s;
  s.ratio_z = e.z;
  s.num_params = e.num;
  s.den_params = e.den;
  s.factor_num = kpoly(e.poly);
  if (!e.factor_den.empty()) s.factor_den = kpoly(e.factor_den);
  return s;
}

// Same terms as the displayed series scaled by `prefactor`, in whatever
// parameter presentation the reindexing settled on.
void check_terms(const Reindexed& r, const Expected& e, const Rational& prefactor) {
  SeriesSpec shown = to_spec(e);
  for (long k = 0; k <= 30; ++k) REQUIRE(term_value(r.spec, k) == prefactor * term_value(shown, k));
}

const Rational h = q(1, 2);

Expected rate4(std::vector<Rational> num, std::vector<Rational> den, std::vector<long> poly) {
  return {q(-1, 4), std::move(num), std::move(den), std::move(poly), {}};
}

Expected rate1024(std::vector<Rational> num, std::vector<Rational> den, std::vector<long> poly,
                  std::vector<long> factor_den = {}) {
  return {q(-1, 1024), std::move(num), std::move(den), std::move(poly), std::move(factor_den)};
}

}  // namespace

TEST_CASE("recursion coefficients") {
  AccelParams p = AccelParams::make(h, 0, q(3, 2));
  CHECK(r1(p, 0) == q(29, 16));
  CHECK(r1(p, 1) == -oracle_g0(h, 0, q(5, 2)) / oracle_p2(h, q(5, 2)));
  CHECK(r2(p, 0) == q(-243, 2048));
  Rational r20 = r2(p, 20).abs();
  CHECK(r20 > q(1, 5));
  CHECK(r20 < q(3, 10));
  for (long i = 20; i < 200; i += 10) CHECK((r2(p, i + 10).abs() - q(1, 4)).abs() < (r2(p, i).abs() - q(1, 4)).abs());
  CHECK_THROWS_AS(AccelParams::make(q(1), 0, q(3, 2)), MalformedInput);

  // (0)_b = 0 for b >= 1, so G(n,0) = 0.
  AccelParams z = AccelParams::make(q(0), 1, q(3, 2));
  CHECK(r1(z, 0) == q(0));
}

TEST_CASE("closed-form factor") {
  AccelParams p = AccelParams::make(h, 0, q(3, 2));
  CHECK(mathcal_R(p, 0) == q(7047, 8192));
  CHECK(mathcal_R_bracket(p, 0) == q(29, 4));
  // j = 1 adds -14a + 5 + 10n + 4 = 17 to the bracket; the denominator is 2 * 4 * 2^4.
  CHECK(mathcal_R_bracket(p, 1) == q(97, 4));
  CHECK(mathcal_R(p, 1) == q(243, 32) / q(128) * q(97, 4));
}

TEST_CASE("single-sum closed form") {
  AccelParams p = AccelParams::make(h, 0, q(3, 2));
  AcceleratedSeries s = accelerate_t1(p);
  CHECK(s.term.value(0) == q(29, 16));
  for (long j = 0; j <= 50; ++j) {
    Rational expect = q(1, 16) * q(-1, 4).pow(j) * (rise(q(3, 2), j) / rise(q(2), j)).pow(5) *
                      Rational(20 * j * j + 48 * j + 29);
    REQUIRE(s.term.value(j) == expect);
  }
  CHECK(iterate_t1(p, -1) == q(29, 16));
  for (const auto& t : grid()) {
    AccelParams g = params(t);
    CHECK(iterate_t1(g, -1) == r1(g, 0));
  }
}

TEST_CASE("recursion and closed form agree exactly") {
  for (const auto& t : grid()) {
    AccelParams p = params(t);
    screen_t2(p);
    AcceleratedSeries s1 = accelerate_t1(p), s2 = accelerate_t2(p);
    for (long m = -1; m <= 15; ++m) {
      INFO(p.to_string(), " m=", m);
      REQUIRE(iterate_t1(p, m) == closed_form_partial(s1, m));
      REQUIRE(iterate_t2(p, m) == closed_form_partial(s2, m));
    }
  }
}

TEST_CASE("double-sum pieces") {
  AccelParams p = AccelParams::make(h, 0, q(3, 2));
  T2Pieces x = t2_pieces(p, 0);
  CHECK(x.s1 == q(-243, 4096));
  // 4a - 2j - 2n - 3 = 2 - 0 - 3 - 3.
  CHECK(x.q2 == q(-4));
  CHECK(accelerate_t2(p).scale == q(-243, 4096));
  for (const auto& t : grid())
    for (long j = -1; j <= 40; ++j) CHECK_FALSE(t2_pieces(params(t), j).q2.is_zero());

  CHECK(r3(AccelParams::make(q(1, 3), 0, q(7, 3))) == q(-7, 3));
  CHECK(r3(AccelParams::make(h, 1, q(3, 2))) == q(-7, 512));
  // (1)_1 / (5/2)_1 = 2/5, factor 5/2 + 2.
  CHECK(r3(AccelParams::make(q(1), 1, q(5, 2))) == -(q(2, 5).pow(4)) * q(9, 2));
  for (const auto& t : grid()) {
    AccelParams g = params(t);
    CHECK(iterate_t2(g, -1) == r4(g));
  }
}

TEST_CASE("b-recursion holds within tail bounds") {
  for (const auto& t : grid()) {
    if (t.b < 0) continue;
    for (long db = 0; db <= 2; ++db) {
      AccelParams p = AccelParams::make(t.a, t.b + db, t.n);
      AccelParams up = AccelParams::make(t.a, t.b + db + 1, t.n);
      const long m = 60;
      Rational f0 = iterate_t1(p, m), f1 = iterate_t1(up, m);
      Reindexed r0 = reindex(accelerate_t1(p), 0), ru = reindex(accelerate_t1(up), 0);
      Rational slack = tail_bound(r0.spec, m + 2) + tail_bound(ru.spec, m + 2);
      CHECK((f1 - f0 - r3(p)).abs() <= slack);
    }
  }
}

TEST_CASE("reindexing reproduces displayed series") {
  auto t1 = [](Rational a, long b, Rational n, long shift) {
    return reindex(accelerate_t1(AccelParams::make(a, b, n)), shift);
  };
  auto t2 = [](Rational a, long b, Rational n, long shift) {
    AccelParams p = AccelParams::make(a, b, n);
    screen_t2(p);
    return reindex(accelerate_t2(p), shift);
  };
  std::vector<Rational> h5(5, h), one5(5, q(1));

  auto g = t1(h, 0, q(3, 2), 1);
  check_matches(g, rate4(h5, one5, {1, 8, 20}), q(-8));
  CHECK(g.absorbed == q(8));
  check_matches(t1(h, 1, q(3, 2), 1), rate4(h5, {q(1), q(2), q(2), q(2), q(2)}, {13, 32, 20}), q(-1, 2));
  check_matches(t1(-h, 3, h, 2), rate4(h5, {q(1), q(3), q(3), q(3), q(3)}, {41, 56, 20}), q(1, 192));
  CHECK(t1(-h, 4, h, 2).spec.den_params == sorted({q(1), q(4), q(4), q(4), q(4)}));
  CHECK(t1(-h, 4, h, 2).spec.factor_num == kpoly({17, 16, 4}));
  CHECK(t1(-h, 5, h, 2).spec.factor_num == kpoly({145, 104, 20}));
  std::vector<Rational> base1{q(1), q(1), q(1), q(1)};
  auto motiv = t1(-h, 0, q(7, 2), 4);
  CHECK(motiv.spec.num_params == std::vector<Rational>(5, q(3, 2)));
  CHECK(motiv.spec.factor_num == kpoly({9, 24, 20}));
  CHECK(t1(-h, -1, q(5, 2), 2).spec.factor_num == kpoly({5, 8, 4}));
  CHECK(t1(-h, -2, q(3, 2), 0).spec.factor_num == kpoly({49, 56, 20}));
  CHECK(t1(-h, -3, q(5, 2), 0).spec.factor_num == kpoly({81, 72, 20}));
  // (-1/2,-3,3/2) gives the 81-constant series one index early, not the 49 one.
  CHECK(t1(-h, -3, q(3, 2), -1).spec.factor_num == kpoly({81, 72, 20}));
  check_matches(t1(-h, -2, q(3, 2), 0),
                rate4(std::vector<Rational>(5, q(7, 2)), {q(1), q(1), q(1), q(1), q(4)}, {49, 56, 20}),
                q(256, 151875));

  check_matches(t2(h, 1, q(3, 2), 2), rate1024(h5, one5, {13, 180, 820}), q(-1, 2));
  check_matches(t2(h, 0, q(3, 2), 2),
                rate1024({-h, -h, -h, h, h}, one5, {-1, -6, 8, 176, -528, 6560}), q(8));
  check_matches(t2(h, 0, q(5, 2), 2),
                rate1024({-h, -h, -h, -h, q(3, 2)}, {q(1), q(1), q(1), q(1), q(2)},
                         {-99, -540, 2956, 17888, 36144, 34368, 13120}),
                q(-128, 243));
  // The rational-factor display folds into four extra parameters here.
  check_terms(t2(h, 0, q(7, 2), 3),
                rate1024(std::vector<Rational>(5, q(3, 2)), {q(1), q(1), q(1), q(1), q(2)},
                         {729, 972, -1620, -4320, -2320, -2368, 13120},
                         {81, -864, 3888, -9600, 14176, -12800, 6912, -2048, 256}),
                q(524288, 9375));
  check_matches(t2(q(1), 0, q(2), 1), rate1024(one5, std::vector<Rational>(5, q(3, 2)), {77, 250, 205}),
                q(1, 32));
  check_matches(t2(q(1), 1, q(5, 2), 2),
                rate1024({h, h, h, h, h, q(1), q(1), q(1)},
                         {q(5, 4), q(5, 4), q(5, 4), q(5, 4), q(7, 4), q(7, 4), q(7, 4), q(7, 4)},
                         {50, 587, 2762, 6664, 8738, 5936, 1640}),
                q(-4));
}

TEST_CASE("reindex bookkeeping") {
  for (const auto& t : grid()) {
    AccelParams p = params(t);
    for (auto s : {accelerate_t1(p), accelerate_t2(p)}) {
      for (long shift : {0L, default_shift(s)}) {
        Reindexed r = reindex(s, shift);
        // Partial sums agree once both sides cover the same original terms.
        long first = s.term.start + shift;
        long upto = std::max(first, 0L) + 20;
        Rational lhs(0), rhs(r.absorbed);
        for (long j = s.term.start; j <= upto - shift; ++j) lhs += s.scale * s.term.value(j);
        for (long k = 0; k <= upto; ++k) rhs += term_value(r.spec, k);
        CHECK(lhs == rhs);
      }
    }
  }
  AccelParams p = AccelParams::make(h, 0, q(3, 2));
  CHECK(default_shift(accelerate_t1(p)) == 1);
  CHECK(default_shift(accelerate_t2(AccelParams::make(h, 1, q(3, 2)))) == 2);
}

TEST_CASE("generated series approach rate -1/4 per step") {
  for (const auto& t : grid()) {
    AccelParams p = params(t);
    AcceleratedSeries a = accelerate_t1(p), b = accelerate_t2(p);
    CHECK(a.term.limit_ratio() == q(-1, 4));
    CHECK(b.term.limit_ratio() == q(-1, 1024));
    CHECK(rate_property(a));
    CHECK(rate_property(b));
    RatFun r = a.term.ratio();
    for (long j = 0; j < 10; ++j)
      CHECK(a.term.value(j + 1) == a.term.value(j) * evaluate(r, {{Var::j, Rational(j)}}));
  }
}
