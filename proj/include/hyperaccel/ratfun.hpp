#pragma once

#include <string>

#include "hyperaccel/multipoly.hpp"

namespace hyperaccel {

// Quotient of two polynomials over {n,k,j,a,b}.
//
// Construction stores num/den as given (den must be nonzero). Arithmetic
// results are always canonical: gcd(num, den) = 1, num and den have integer
// coefficients with joint content 1, and den has a positive graded-lex
// leading coefficient.
class RatFun {
 public:
  RatFun() : den_(Rational(1)), canonical_(true) {}
  RatFun(const MultiPoly& num);  // NOLINT(google-explicit-constructor)
  RatFun(const Rational& c) : RatFun(MultiPoly(c)) {}  // NOLINT(google-explicit-constructor)
  RatFun(MultiPoly num, MultiPoly den);

  static RatFun variable(Var v) { return RatFun(MultiPoly::variable(v)); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool uses(Var v) const { return num_.uses(v) || den_.uses(v); }
  // deg_v(num) - deg_v(den) for a nonzero function.
  int degree_gap(Var v) const;

  RatFun substitute(Var v, const MultiPoly& replacement) const;
  RatFun partial_evaluate(const Assignment& x) const;
  RatFun pow(int e) const;

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& f, const RatFun& g);
  friend RatFun operator-(const RatFun& f, const RatFun& g);
  friend RatFun operator*(const RatFun& f, const RatFun& g);
  friend RatFun operator/(const RatFun& f, const RatFun& g);
  RatFun& operator+=(const RatFun& g) { return *this = *this + g; }
  RatFun& operator-=(const RatFun& g) { return *this = *this - g; }
  RatFun& operator*=(const RatFun& g) { return *this = *this * g; }
  RatFun& operator/=(const RatFun& g) { return *this = *this / g; }

  // Structural comparison of the stored representation; use `equivalent`
  // for mathematical equality.
  bool same_representation(const RatFun& g) const { return num_ == g.num_ && den_ == g.den_; }

  bool is_canonical() const { return canonical_; }

  // "num" when den == 1, otherwise "(num)/(den)".
  std::string to_string() const;

 private:
  friend RatFun make_canonical(MultiPoly num, MultiPoly den);
  MultiPoly num_, den_;
  bool canonical_ = false;
};

std::ostream& operator<<(std::ostream& os, const RatFun& f);

// Canonical representative; idempotent.
RatFun normalize(const RatFun& f);

// Exact value; throws PoleError (naming the assignment) when the
// denominator vanishes.
Rational evaluate(const RatFun& f, const Assignment& x);

// True iff f - g normalizes to zero.
bool equivalent(const RatFun& f, const RatFun& g);

}  // namespace hyperaccel
