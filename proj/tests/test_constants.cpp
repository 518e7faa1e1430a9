// Links only the constants library: the reference values must not depend on
#include <cmath>
// the catalog or any series machinery.
#include <mpfr.h>

#include <string>

#include "doctest.h"
#include "hyperaccel/constants.hpp"

using namespace hyperaccel;

namespace {

const char* kPi =
    "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651";
const char* kZeta3 =
    "1.20205690315959428539973816151144999076498629234049888179227155534183820578631309018645587360933525814619915779";

// |x - ref| <= abs_error, where ref is a decimal string with more digits than x carries.
bool encloses(const HPFloat& x, const char* ref) {
  mpfr_t r, d;
  mpfr_init2(r, 1024);
  mpfr_init2(d, 1024);
  mpfr_set_str(r, ref, 10, MPFR_RNDN);
  mpfr_sub(d, x.value(), r, MPFR_RNDN);
  mpfr_abs(d, d, MPFR_RNDN);
  // the decimal reference itself is good to ~1e-110
  mpfr_sub_d(d, d, 1e-108, MPFR_RNDN);
  bool ok = mpfr_cmp(d, x.abs_error()) <= 0;
  mpfr_clear(r);
  mpfr_clear(d);
  return ok;
}

double error_bits(const HPFloat& x) {
  return mpfr_get_d(x.abs_error(), MPFR_RNDU) == 0 ? -1e9 : x.error_log10() / std::log10(2.0);
}

}  // namespace

TEST_CASE("pi reference") {
  for (long bits : {64L, 128L, 256L, 300L}) {
    HPFloat pi = ref_pi(bits);
    CHECK(encloses(pi, kPi));
    CHECK(error_bits(pi) <= 4.0 - bits);
  }
  CHECK(ref_pi(128).to_string(21) == "3.14159265358979323846e+00");
  CHECK(ref_pi(256).error_log10() < ref_pi(128).error_log10());
  HPFloat one = HPFloat::from_rational(Rational(1), 128);
  HPFloat pi = ref_pi(128);
  HPFloat inv = one / (pi * pi);
  CHECK(inv.to_string(19) == "1.013211836423377714e-01");
  CHECK(inv.error_log10() < -35);
}

TEST_CASE("zeta(3) reference") {
  for (long bits : {64L, 128L, 256L, 300L}) {
    HPFloat z = ref_zeta3(bits);
    CHECK(encloses(z, kZeta3));
    CHECK(error_bits(z) <= 4.0 - bits);
  }
  CHECK(ref_zeta3(128).to_string(21) == "1.20205690315959428540e+00");
  CHECK(ref_zeta3(256).error_log10() < ref_zeta3(128).error_log10());
  HPFloat t = ref_zeta3(128) * Rational(64);
  CHECK(t.to_string(12) == "7.69316418022e+01");
}

TEST_CASE("precondition") {
  CHECK_THROWS(ref_pi(32));
  CHECK_THROWS(ref_zeta3(63));
}

TEST_CASE("error propagation encloses exact results") {
  // (1/3 + 2/7) * 5/11 / (1/13) computed in 64 bits versus the exact rational.
  const long bits = 64;
  HPFloat a = HPFloat::from_rational(Rational(1, 3), bits);
  HPFloat b = HPFloat::from_rational(Rational(2, 7), bits);
  HPFloat c = HPFloat::from_rational(Rational(1, 13), bits);
  HPFloat x = (a + b) * Rational(5, 11) / c;
  x = x * x - HPFloat::from_rational(Rational(1), bits);
  Rational exact = ((Rational(1, 3) + Rational(2, 7)) * Rational(5, 11) / Rational(1, 13)).pow(2) - Rational(1);
  mpfr_t e, d;
  mpfr_init2(e, 512);
  mpfr_init2(d, 512);
  mpfr_set_q(e, exact.get().get_mpq_t(), MPFR_RNDN);
  mpfr_sub(d, x.value(), e, MPFR_RNDN);
  mpfr_abs(d, d, MPFR_RNDN);
  CHECK(mpfr_cmp(d, x.abs_error()) <= 0);
  CHECK(x.error_log10() < -15);
  mpfr_clear(e);
  mpfr_clear(d);

  HPFloat tiny = HPFloat::from_rational(Rational(1, 1000), bits);
  tiny.add_error(Rational(1, 100));
  CHECK_THROWS(a / tiny);
}
