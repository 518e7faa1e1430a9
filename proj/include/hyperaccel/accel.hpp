#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyperaccel/certify.hpp"

namespace hyperaccel {

// (a, b, n) driving both accelerations. `make` enforces a < (2n+1)/4 and
// screens the denominators shared by the iterated recursion and the
// single-sum closed form for the first `range` indices.
struct AccelParams {
  Rational a;
  long b = 0;
  Rational n;

  static AccelParams make(const Rational& a, long b, const Rational& n, long range = 64);
  std::string to_string() const;
};

// Extra screening for the double-sum (b-shifting) acceleration over
// indices -1..range.
void screen_t2(const AccelParams& p, long range = 64);

// (base0 + base1*j)_{idx0 + idx1*j} raised to `exponent`; base1, idx1 >= 0.
struct PochFactor {
  Rational base0;
  long base1 = 0;
  long idx0 = 0;
  long idx1 = 0;
  int exponent = 1;
};

// constant * power^j * prod PochFactor(j) * rational(j), for j >= start.
struct GeneralTerm {
  Rational constant{1};
  Rational power{1};
  long start = 0;
  std::vector<PochFactor> factors;
  RatFun rational{Rational(1)};

  Rational value(long j) const;
  // term(j+1)/term(j) as a rational function of j.
  RatFun ratio() const;
  // Limit of ratio(): power * prod (mu^mu / nu^nu)^e with mu = base1 + idx1, nu = base1.
  Rational limit_ratio() const;
};

enum class Theorem { t1, t2 };

// value = scale * sum_{j >= term.start} term(j).
struct AcceleratedSeries {
  Theorem theorem = Theorem::t1;
  AccelParams params;
  GeneralTerm term;
  Rational scale{1};
  std::string lhs_description;
};

Rational p1_at(const Rational& a, const Rational& n);
Rational p2_at(const Rational& a, const Rational& n);

// -G(n+shift,0)/p2(n+shift) with b held fixed.
Rational r1(const AccelParams& p, long shift);
// -p1(n+shift)/p2(n+shift).
Rational r2(const AccelParams& p, long shift);
// The closed-form single-sum rational factor at index j.
Rational mathcal_R(const AccelParams& p, long j);
// Its quadratic numerator bracket alone.
Rational mathcal_R_bracket(const AccelParams& p, long j);

AcceleratedSeries accelerate_t1(const AccelParams& p);
// sum_{j=-1}^{m} (prod_{i=0}^{j} r2(n+i)) r1(n+j+1).
Rational iterate_t1(const AccelParams& p, long m);

struct T2Pieces {
  Rational q1, q2, s1, s2;
};
T2Pieces t2_pieces(const AccelParams& p, long j);

AcceleratedSeries accelerate_t2(const AccelParams& p);
// -[a^4/(n-a+1)^4]_b (n+2b); f(n,b+1) - f(n,b) = r3(n,b).
Rational r3(const AccelParams& p);
// r1(n,b) - r2(n) r3(n+1,b).
Rational r4(const AccelParams& p);
// sum_{j=-1}^{m} (prod_{i=0}^{j} r2(n+i)) r4(n+j+1, b+j+1).
Rational iterate_t2(const AccelParams& p, long m);

// The aligned partial sum of the closed form matching iterate_t1/t2(m).
Rational closed_form_partial(const AcceleratedSeries& s, long m);

// Rewrites the series so that value = sum_{k>=0} spec(k) + absorbed, with
// the index moved by k = j + shift and all j-dependent Pochhammer indices
// collapsed into fixed parameters. The SeriesSpec factor polynomials are
// primitive with positive leading coefficients; the prefactor carries the
// scale. Throws NotCollapsible when a factor does not reduce.
struct Reindexed {
  SeriesSpec spec;
  Rational absorbed;
};
Reindexed reindex(const AcceleratedSeries& s, long shift);

// Largest shift in [-8, 16] for which reindex succeeds.
long default_shift(const AcceleratedSeries& s);

// deg_j num(ratio - limit) < deg_j den(ratio - limit).
bool rate_property(const AcceleratedSeries& s);

}  // namespace hyperaccel
