#include "hyperaccel/hpfloat.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "hyperaccel/errors.hpp"

namespace hyperaccel {

namespace {

// RAII scratch value for error arithmetic.
struct Scratch {
  mpfr_t v;
  explicit Scratch(long bits = kErrorBits) { mpfr_init2(v, bits); mpfr_set_zero(v, 1); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

// dst = |src| rounded up.
void abs_up(mpfr_ptr dst, mpfr_srcptr src) { mpfr_abs(dst, src, MPFR_RNDU); }

}  // namespace

HPFloat::HPFloat(long precision_bits) : bits_(precision_bits) {
  if (precision_bits < MPFR_PREC_MIN) throw MalformedInput("precision too small");
  mpfr_init2(value_, bits_);
  mpfr_init2(error_, kErrorBits);
  mpfr_set_zero(value_, 1);
  mpfr_set_zero(error_, 1);
}

HPFloat::HPFloat(const HPFloat& o) : bits_(o.bits_) {
  mpfr_init2(value_, bits_);
  mpfr_init2(error_, kErrorBits);
  mpfr_set(value_, o.value_, MPFR_RNDN);
  mpfr_set(error_, o.error_, MPFR_RNDU);
}

HPFloat::HPFloat(HPFloat&& o) noexcept : HPFloat(o.bits_) {
  mpfr_swap(value_, o.value_);
  mpfr_swap(error_, o.error_);
}

HPFloat& HPFloat::operator=(HPFloat o) noexcept {
  std::swap(bits_, o.bits_);
  mpfr_swap(value_, o.value_);
  mpfr_swap(error_, o.error_);
  return *this;
}

HPFloat::~HPFloat() {
  mpfr_clear(value_);
  mpfr_clear(error_);
}

HPFloat HPFloat::from_rational(const Rational& q, long precision_bits) {
  HPFloat r(precision_bits);
  if (mpfr_set_q(r.value_, q.get().get_mpq_t(), MPFR_RNDN) != 0) r.add_rounding_error();
  return r;
}

void HPFloat::add_rounding_error() {
  Scratch t;
  abs_up(t.v, value_);
  mpfr_mul_2si(t.v, t.v, 1 - bits_, MPFR_RNDU);
  mpfr_add(error_, error_, t.v, MPFR_RNDU);
}

void HPFloat::add_error(const Rational& e) {
  Scratch t;
  mpfr_set_q(t.v, e.abs().get().get_mpq_t(), MPFR_RNDU);
  mpfr_add(error_, error_, t.v, MPFR_RNDU);
}

void HPFloat::add_error(mpfr_srcptr e) {
  Scratch t;
  abs_up(t.v, e);
  mpfr_add(error_, error_, t.v, MPFR_RNDU);
}

double HPFloat::error_log10() const {
  if (mpfr_zero_p(error_)) return -std::numeric_limits<double>::infinity();
  Scratch t;
  mpfr_log10(t.v, error_, MPFR_RNDU);
  return mpfr_get_d(t.v, MPFR_RNDU);
}

std::string HPFloat::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits > 1 ? digits - 1 : 0, value_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string HPFloat::error_string() const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.3RUe", error_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

HPFloat& HPFloat::operator+=(const HPFloat& o) {
  bits_ = std::max(bits_, o.bits_);
  mpfr_prec_round(value_, bits_, MPFR_RNDN);
  mpfr_add(error_, error_, o.error_, MPFR_RNDU);
  if (mpfr_add(value_, value_, o.value_, MPFR_RNDN) != 0) add_rounding_error();
  return *this;
}

HPFloat& HPFloat::operator-=(const HPFloat& o) { return *this += -o; }

HPFloat& HPFloat::operator*=(const HPFloat& o) {
  bits_ = std::max(bits_, o.bits_);
  mpfr_prec_round(value_, bits_, MPFR_RNDN);
  // |x|ey + |y|ex + ex ey
  Scratch ax, ay, t, acc;
  abs_up(ax.v, value_);
  abs_up(ay.v, o.value_);
  mpfr_mul(acc.v, ax.v, o.error_, MPFR_RNDU);
  mpfr_mul(t.v, ay.v, error_, MPFR_RNDU);
  mpfr_add(acc.v, acc.v, t.v, MPFR_RNDU);
  mpfr_mul(t.v, error_, o.error_, MPFR_RNDU);
  mpfr_add(error_, acc.v, t.v, MPFR_RNDU);
  if (mpfr_mul(value_, value_, o.value_, MPFR_RNDN) != 0) add_rounding_error();
  return *this;
}

HPFloat& HPFloat::operator/=(const HPFloat& o) {
  // |X/Y - x/y| <= (ex + |x/y| ey) / (|y| - ey)
  Scratch ay, gap;
  mpfr_abs(ay.v, o.value_, MPFR_RNDD);
  mpfr_sub(gap.v, ay.v, o.error_, MPFR_RNDD);
  if (mpfr_sgn(gap.v) <= 0) throw MathError("division by a value whose error interval contains zero");
  bits_ = std::max(bits_, o.bits_);
  mpfr_prec_round(value_, bits_, MPFR_RNDN);
  bool inexact = mpfr_div(value_, value_, o.value_, MPFR_RNDN) != 0;
  Scratch q, t;
  abs_up(q.v, value_);
  // |x/y| <= |v| (1 + 2^(1-p)) covers the rounding of v.
  mpfr_mul_2si(t.v, q.v, 1 - bits_, MPFR_RNDU);
  mpfr_add(q.v, q.v, t.v, MPFR_RNDU);
  mpfr_mul(t.v, q.v, o.error_, MPFR_RNDU);
  mpfr_add(t.v, t.v, error_, MPFR_RNDU);
  mpfr_div(error_, t.v, gap.v, MPFR_RNDU);
  if (inexact) add_rounding_error();
  return *this;
}

HPFloat& HPFloat::operator*=(const Rational& q) {
  Scratch aq;
  mpfr_set_q(aq.v, q.abs().get().get_mpq_t(), MPFR_RNDU);
  mpfr_mul(error_, error_, aq.v, MPFR_RNDU);
  int i1 = mpfr_mul_z(value_, value_, q.get().get_num_mpz_t(), MPFR_RNDN);
  int i2 = mpfr_div_z(value_, value_, q.get().get_den_mpz_t(), MPFR_RNDN);
  if (i1 != 0 || i2 != 0) {
    // two roundings
    add_rounding_error();
    add_rounding_error();
  }
  return *this;
}

HPFloat HPFloat::operator-() const {
  HPFloat r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

HPFloat HPFloat::abs() const {
  HPFloat r(*this);
  mpfr_abs(r.value_, r.value_, MPFR_RNDN);
  return r;
}

}  // namespace hyperaccel
