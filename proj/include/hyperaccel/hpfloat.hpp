#pragma once

#include <mpfr.h>

#include <string>

#include "hyperaccel/rational.hpp"

namespace hyperaccel {

// MPFR value with a rigorous bound on its distance from the quantity it
// represents. Values are rounded to nearest; every error term is rounded
// upward, and each rounding of a value contributes |result| * 2^(1-p).
class HPFloat {
 public:
  explicit HPFloat(long precision_bits = 128);
  HPFloat(const HPFloat& o);
  HPFloat(HPFloat&& o) noexcept;
  HPFloat& operator=(HPFloat o) noexcept;
  ~HPFloat();

  static HPFloat from_rational(const Rational& q, long precision_bits);

  long precision_bits() const { return bits_; }
  mpfr_srcptr value() const { return value_; }
  mpfr_srcptr abs_error() const { return error_; }

  void add_error(const Rational& e);
  void add_error(mpfr_srcptr e);

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // log10 of the error bound; -inf when the bound is zero.
  double error_log10() const;
  // Scientific notation with `digits` significant digits.
  std::string to_string(int digits) const;
  std::string error_string() const;

  HPFloat& operator+=(const HPFloat& o);
  HPFloat& operator-=(const HPFloat& o);
  HPFloat& operator*=(const HPFloat& o);
  // Throws MathError when the divisor's error interval contains zero.
  HPFloat& operator/=(const HPFloat& o);
  HPFloat& operator*=(const Rational& q);

  friend HPFloat operator+(HPFloat a, const HPFloat& b) { return a += b; }
  friend HPFloat operator-(HPFloat a, const HPFloat& b) { return a -= b; }
  friend HPFloat operator*(HPFloat a, const HPFloat& b) { return a *= b; }
  friend HPFloat operator/(HPFloat a, const HPFloat& b) { return a /= b; }
  friend HPFloat operator*(HPFloat a, const Rational& q) { return a *= q; }
  HPFloat operator-() const;
  HPFloat abs() const;

 private:
  void add_rounding_error();

  long bits_;
  mpfr_t value_;
  mpfr_t error_;
};

// Precision of the upward-rounded error bounds.
inline constexpr long kErrorBits = 64;

}  // namespace hyperaccel
