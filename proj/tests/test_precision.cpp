#include <mpfr.h>

#include <cmath>
#include <string>

#include "doctest.h"
#include "hyperaccel/errors.hpp"
#include "hyperaccel/precision.hpp"

using namespace hyperaccel;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

// Oracle values come from MPFR's own constants, not from the library's
// reference implementations.
struct Oracle {
  mpfr_t v;
  explicit Oracle(long bits) { mpfr_init2(v, bits); }
  ~Oracle() { mpfr_clear(v); }
};

// c / pi^2, c pi^2, c / pi
void oracle_pi_power(Oracle& o, const Rational& c, int power) {
  mpfr_const_pi(o.v, MPFR_RNDN);
  mpfr_pow_si(o.v, o.v, power, MPFR_RNDN);
  mpfr_mul_q(o.v, o.v, c.get().get_mpq_t(), MPFR_RNDN);
}

// |x - oracle| <= abs_error (+ the oracle's own rounding).
bool within(const HPFloat& x, const Oracle& o) {
  Oracle d(mpfr_get_prec(o.v) + 64);
  mpfr_sub(d.v, x.value(), o.v, MPFR_RNDN);
  mpfr_abs(d.v, d.v, MPFR_RNDN);
  Oracle slack(64);
  mpfr_abs(slack.v, o.v, MPFR_RNDN);
  mpfr_mul_2si(slack.v, slack.v, 4 - static_cast<long>(mpfr_get_prec(o.v)), MPFR_RNDN);
  mpfr_sub(d.v, d.v, slack.v, MPFR_RNDN);
  return mpfr_cmp(d.v, x.abs_error()) <= 0;
}

// -log10 |x - oracle| / max(1,|oracle|)
double agreement(const HPFloat& x, const Oracle& o) {
  Oracle d(mpfr_get_prec(o.v) + 64);
  mpfr_sub(d.v, x.value(), o.v, MPFR_RNDN);
  mpfr_abs(d.v, d.v, MPFR_RNDN);
  if (mpfr_zero_p(d.v)) return 1e9;
  Oracle s(64);
  mpfr_abs(s.v, o.v, MPFR_RNDN);
  if (mpfr_cmp_ui(s.v, 1) < 0) mpfr_set_ui(s.v, 1, MPFR_RNDN);
  mpfr_div(d.v, d.v, s.v, MPFR_RNDN);
  mpfr_log10(d.v, d.v, MPFR_RNDN);
  return -mpfr_get_d(d.v, MPFR_RNDN);
}

const CatalogEntry& entry(const std::string& id) {
  static const auto c = builtin_catalog();
  const CatalogEntry* e = find_entry(c, id);
  REQUIRE(e);
  return *e;
}

// sum 1/(k+1)^2
SeriesSpec basel() {
  SeriesSpec s;
  s.num_params = {q(1), q(1)};
  s.den_params = {q(2), q(2)};
  return s;
}

// Brute-force term products.
Rational rise(Rational x, long m) {
  Rational r(1);
  for (long i = 0; i < m; ++i) r *= x + Rational(i);
  return r;
}

}  // namespace

TEST_CASE("rate -1/4 Guillera sum") {
  const auto& e = entry("guillera-m14");
  HPFloat s = sum_series(e.series, 100, 256);
  Oracle o(400);
  oracle_pi_power(o, q(8), -2);
  CHECK(within(s, o));
  CHECK(s.error_log10() <= -55);
  CHECK(agreement(s, o) >= 55);
}

TEST_CASE("rate -1/1024 Guillera sum") {
  const auto& e = entry("guillera-1024");
  HPFloat s = sum_series(e.series, 40, 512);
  Oracle o(700);
  oracle_pi_power(o, q(128), -2);
  CHECK(within(s, o));
  CHECK(agreement(s, o) >= 100);
  CHECK(digits_agreement(s, target_value(*e.target, 512)) >= 100);

  HPFloat ten = sum_series(e.series, 10, 256);
  CHECK(digits_agreement(ten, target_value(*e.target, 256)) >= 25);
}

TEST_CASE("empty range carries the whole tail") {
  const auto& e = entry("guillera-m14");
  HPFloat s = sum_series(e.series, 0, 128);
  CHECK(s.is_zero());
  mpfr_t t;
  mpfr_init2(t, kErrorBits);
  mpfr_set_q(t, tail_bound(e.series, 0).get().get_mpq_t(), MPFR_RNDU);
  CHECK(mpfr_cmp(s.abs_error(), t) == 0);
  mpfr_clear(t);
  CHECK_THROWS_AS(sum_series(entry("glaisher").series, 10, 128), CannotBound);
}

TEST_CASE("polynomial-decay summation") {
  HPFloat s = sum_series(basel(), 200, 256, Truncation::polynomial_decay);
  Oracle o(400);
  oracle_pi_power(o, q(1, 6), 2);
  CHECK(within(s, o));
  CHECK(s.error_log10() < -40);
  CHECK(agreement(s, o) > 40);

  DecayTail dt = decay_tail(basel(), 100);
  CHECK(dt.s == q(2));
  CHECK(dt.order >= 2);

  // Glaisher's terms decay like k^-3 and the closed form gives 8/pi^2.
  HPFloat g = sum_series(entry("glaisher").series, 256, 256, Truncation::polynomial_decay);
  Oracle go(400);
  oracle_pi_power(go, q(8), -2);
  CHECK(within(g, go));
  CHECK(agreement(g, go) > 30);

  CHECK_THROWS_AS(decay_tail(entry("guillera-m14").series, 10), CannotBound);
  SeriesSpec harmonic;  // sum 1/(k+1)
  harmonic.num_params = {q(1)};
  harmonic.den_params = {q(2)};
  CHECK_THROWS_AS(decay_tail(harmonic, 10), CannotBound);
}

TEST_CASE("digits agreement") {
  HPFloat a = HPFloat::from_rational(q(1), 128), b = HPFloat::from_rational(q(1001, 1000), 128);
  CHECK(digits_agreement(a, b) == 3);
  CHECK(digits_agreement(a, a) == static_cast<int>(std::floor(127 * std::log10(2.0))));
  HPFloat c = a;
  c.add_error(q(1, 100000));
  CHECK(digits_agreement(c, a) == 4);
  HPFloat big = HPFloat::from_rational(q(123456), 128), big2 = HPFloat::from_rational(q(123457), 128);
  CHECK(digits_agreement(big, big2) == 5);
}

TEST_CASE("entry verification") {
  auto r = verify_entry(entry("ramanujan-6k1"), 25);
  CHECK(r.pass);
  CHECK(r.status == VerifyStatus::pass);
  CHECK(r.digits_agreement >= 25);
  CHECK(r.terms_used == static_cast<long>(std::ceil(25 / std::log10(4.0))) + 10);
  CHECK(r.precision_bits == 164);

  CHECK(verify_entry(entry("au-427"), 25).pass);

  auto g = verify_entry(entry("glaisher"), 25);
  CHECK(!g.pass);
  CHECK(g.status == VerifyStatus::skipped_rate_1);
  CHECK(g.detail.find("partial-sums --check glaisher") != std::string::npos);

  auto starved = verify_entry(entry("guillera-2764"), 25, 12);
  CHECK(!starved.pass);
  CHECK(starved.detail.find("term budget") != std::string::npos);

  CatalogEntry wrong = entry("guillera-m14");
  wrong.target = TargetConstant::parse("9 * 1/pi^2");
  wrong.note = kTranscriptionNote;
  auto w = verify_entry(wrong, 25);
  CHECK(!w.pass);
  CHECK(allowed_failure(w));
  CHECK(w.detail.find("exceeds") != std::string::npos);
}

TEST_CASE("passing reports survive refinement") {
  for (const char* id : {"ramanujan-20k3", "firstknown", "czcubic", "az-zeta3", "pi2-81-16"}) {
    auto r = verify_entry(entry(id), 25);
    REQUIRE_MESSAGE(r.pass, id);
    HPFloat finer = sum_series(entry(id).series, 2 * r.terms_used, 2 * r.precision_bits);
    HPFloat change = (finer - r.computed).abs();
    CHECK_MESSAGE(mpfr_cmp(change.value(), r.computed.abs_error()) < 0, id);
  }
}

TEST_CASE("reports are deterministic") {
  std::vector<EvalReport> a, b;
  for (const char* id : {"guillera-1024", "glaisher", "cl41"}) {
    a.push_back(verify_entry(entry(id), 30));
    b.push_back(verify_entry(entry(id), 30));
  }
  CHECK(render_reports(a, ReportFormat::text, false) == render_reports(b, ReportFormat::text, false));
  std::string csv = render_reports(a, ReportFormat::csv, false);
  CHECK(csv == render_reports(b, ReportFormat::csv, false));
  CHECK(csv.rfind("id,rate,terms,digits,pass,ms\n", 0) == 0);
  CHECK(csv.find("glaisher,1,0,0,skipped-rate-1,-") != std::string::npos);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(mpfr_equal_p(a[i].computed.value(), b[i].computed.value()));
    CHECK(mpfr_equal_p(a[i].computed.abs_error(), b[i].computed.abs_error()));
  }
}

TEST_CASE("exact partial-sum identities") {
  // direct evaluation of both sides at n = 0, 1
  auto glaisher_lhs = [](long n) {
    Rational s(0);
    for (long k = 0; k <= n; ++k) s += (rise(q(-1, 2), k) / rise(q(1), k)).pow(4) * Rational(1 - 4 * k);
    return s;
  };
  CHECK(glaisher_lhs(0) == q(1));
  CHECK(glaisher_lhs(1) == q(13, 16));
  auto guillera_lhs = [](long n) {
    Rational s(0);
    for (long k = 0; k <= n; ++k) s += (rise(q(1, 2), k) / rise(q(2), k)).pow(4) * Rational(4 * k + 3);
    return s;
  };
  CHECK(guillera_lhs(0) == q(3));
  CHECK(guillera_lhs(0) == q(16) - q(13));
  CHECK(guillera_lhs(1) == q(16) - (q(3, 2) / q(2)).pow(4) * q(8 + 20 + 13));

  CHECK(check_glaisher_partial(0));
  CHECK(check_guillera_partial(0));
  auto g = check_glaisher_partial(200);
  CHECK(g.ok);
  CHECK(g.first_failure == -1);
  CHECK(check_guillera_partial(200));
  CHECK_THROWS_AS(check_glaisher_partial(-1), MalformedInput);
}

TEST_CASE("shifted Guillera identity") {
  for (auto [a, digits] : {std::pair{q(1, 2), 25}, {q(3, 4), 25}, {q(1), 25}, {q(1, 4), 15}}) {
    auto r = check_identity8(a, digits);
    CHECK_MESSAGE(r.ok, a.to_string());
    CHECK(r.digits >= digits);
  }
  // a = 1: the left side is 8 (16 - 128/pi^2) by the partial-sum identity.
  auto r = check_identity8(q(1), 25);
  Oracle o(300);
  oracle_pi_power(o, q(-1024), -2);
  mpfr_add_ui(o.v, o.v, 128, MPFR_RNDN);
  CHECK(within(r.left, o));
  CHECK(within(r.right, o));

  // a = 1/2: the right side is the 20k^2+8k+1 series shifted by 1/2 in k.
  SeriesSpec right = identity8_right(q(1, 2));
  CHECK(right.num_params == std::vector<Rational>(5, q(1)));
  CHECK(right.den_params == std::vector<Rational>(5, q(3, 2)));

  CHECK_THROWS_AS(check_identity8(q(1, 4), 100, 256), ConvergenceTooSlow);
  CHECK_THROWS_AS(check_identity8(q(0), 25), MalformedInput);
}
