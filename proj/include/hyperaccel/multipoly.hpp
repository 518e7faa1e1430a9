#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hyperaccel/rational.hpp"

namespace hyperaccel {

// The fixed symbol set. The declaration order is also the lexicographic
// tie-break order of the graded-lex monomial ordering (n > k > j > a > b).
enum class Var : std::uint8_t { n = 0, k = 1, j = 2, a = 3, b = 4 };
inline constexpr std::size_t kNumVars = 5;
inline constexpr std::array<Var, kNumVars> kAllVars = {Var::n, Var::k, Var::j, Var::a, Var::b};

char var_name(Var v);
Var parse_var(char c);

using Exponents = std::array<std::uint16_t, kNumVars>;

struct GrlexLess {
  bool operator()(const Exponents& x, const Exponents& y) const;
};

// Partial or total assignment of symbols to rationals.
using Assignment = std::map<Var, Rational>;
std::string to_string(const Assignment& x);

// Sparse polynomial over Q in {n,k,j,a,b}. Zero coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  explicit MultiPoly(long c) : MultiPoly(Rational(c)) {}

  static MultiPoly variable(Var v);
  static MultiPoly monomial(const Exponents& e, const Rational& c);
  // c[0] + c[1] v + c[2] v^2 + ...
  static MultiPoly univariate(Var v, std::span<const Rational> ascending);
  // x + c for the given variable.
  static MultiPoly linear(Var v, const Rational& c) { return variable(v) + MultiPoly(c); }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const;
  bool uses(Var v) const;

  unsigned total_degree() const;
  // Degree in one variable; -1 for the zero polynomial.
  int degree(Var v) const;
  // Leading term under graded-lex; requires nonzero.
  const Exponents& leading_exponents() const;
  const Rational& leading_coefficient() const;

  // Coefficient polynomials in v, ascending: this = sum c[i] v^i.
  std::vector<MultiPoly> coefficients_in(Var v) const;
  // Ascending rational coefficients of a polynomial in v only.
  std::vector<Rational> univariate_coefficients(Var v) const;

  Rational evaluate(const Assignment& x) const;
  MultiPoly partial_evaluate(const Assignment& x) const;
  MultiPoly substitute(Var v, const MultiPoly& replacement) const;

  MultiPoly pow(unsigned e) const;
  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  // Terms in descending graded-lex order, e.g. "2*n^2*k - 1/2*a + 3".
  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

// Scales p to integer coefficients with content 1 and a positive graded-lex
// leading coefficient. Returns the scale factor through `scale` if given.
MultiPoly primitive_integer(const MultiPoly& p, Rational* scale = nullptr);

// Exact quotient a / b; throws MalformedInput if b does not divide a.
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);

// Greatest common divisor over Q, returned in primitive_integer form
// (gcd(0, 0) = 0).
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

// Univariate division with remainder in v; divisor must be univariate in v
// with the dividend univariate in v as well.
std::pair<MultiPoly, MultiPoly> divide_univariate(const MultiPoly& a, const MultiPoly& b, Var v);

}  // namespace hyperaccel

namespace hyperaccel {

// Parses polynomial expressions over {n,k,j,a,b}: integer or p/q literals,
// + - *, ^ with nonnegative integer exponents, and parentheses. Accepts the
// output of MultiPoly::to_string.
MultiPoly parse_poly(std::string_view text);

}  // namespace hyperaccel
