#include "hyperaccel/precision.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <sstream>

#include "hyperaccel/errors.hpp"

namespace hyperaccel {

namespace {

using Poly = std::vector<Rational>;  // ascending in k

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Poly neg(Poly a) {
  for (auto& c : a) c = -c;
  return a;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly power(const Poly& a, long e) {
  Poly r{Rational(1)};
  for (long i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

// p(k + 1)
Poly shift_one(const Poly& p) {
  Poly r;
  for (std::size_t i = p.size(); i-- > 0;) {
    r = mul(r, Poly{Rational(1), Rational(1)});
    r = add(r, Poly{p[i]});
  }
  return r;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Truncated power series helpers, N coefficients.
Poly series_mul(const Poly& a, const Poly& b, std::size_t n) {
  Poly r(n, Rational(0));
  for (std::size_t i = 0; i < std::min(a.size(), n); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly series_inverse(const Poly& a, std::size_t n) {
  Poly r(n, Rational(0));
  r[0] = a[0].inverse();
  for (std::size_t i = 1; i < n; ++i) {
    Rational acc(0);
    for (std::size_t j = 1; j <= i && j < a.size(); ++j) acc += a[j] * r[i - j];
    r[i] = -acc / a[0];
  }
  return r;
}

// (1 + x)^e for integer e
Poly binomial_series(long e, std::size_t n) {
  Poly r(n, Rational(0));
  r[0] = Rational(1);
  for (std::size_t i = 1; i < n; ++i) r[i] = r[i - 1] * Rational(e - static_cast<long>(i) + 1, static_cast<long>(i));
  return r;
}

Rational rpow(const Rational& x, long e) { return x.pow(e); }

struct RatioPolys {
  Poly p, q;
};

RatioPolys ratio_polys(const SeriesSpec& spec) {
  RatFun r = term_ratio(spec);
  return {r.num().univariate_coefficients(Var::k), r.den().univariate_coefficients(Var::k)};
}

// Upper bound of |x| + error as an MPFR number.
struct Upper {
  mpfr_t v;
  explicit Upper(const HPFloat& x) {
    mpfr_init2(v, kErrorBits);
    mpfr_abs(v, x.value(), MPFR_RNDU);
    mpfr_add(v, v, x.abs_error(), MPFR_RNDU);
  }
  ~Upper() { mpfr_clear(v); }
  Upper(const Upper&) = delete;
  Upper& operator=(const Upper&) = delete;
};

// Partial sum over [from, to) plus the term at `to`.
std::pair<HPFloat, HPFloat> partial_sum(const SeriesSpec& spec, const RatioPolys& r, long from, long to,
                                        long bits) {
  HPFloat sum(bits);
  HPFloat t = HPFloat::from_rational(term_value(spec, from), bits);
  for (long k = from; k < to; ++k) {
    sum += t;
    Rational qk = eval(r.q, Rational(k));
    if (qk.is_zero()) {
      t = HPFloat::from_rational(term_value(spec, k + 1), bits);
    } else {
      t *= eval(r.p, Rational(k)) / qk;
    }
  }
  return {sum, t};
}

double neg_log10_abs(const Rational& r) {
  mpz_class n = abs(r.num()), d = r.den();
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, n.get_mpz_t()), md = mpz_get_d_2exp(&ed, d.get_mpz_t());
  return -(std::log10(mn) - std::log10(md) + static_cast<double>(en - ed) * std::log10(2.0));
}

}  // namespace

DecayTail decay_tail(const SeriesSpec& spec, long m) {
  if (m < 1) throw CannotBound("polynomial-decay tail needs m >= 1");
  if (asymptotic_rate(spec) != Rational(1)) throw CannotBound("polynomial-decay mode needs rate 1");
  auto [p, q] = ratio_polys(spec);
  const std::size_t deg = q.size() - 1;
  if (deg == 0 || p.size() != q.size() || p.back() != q.back())
    throw CannotBound("term ratio does not tend to 1 like a rational function of degree >= 1");
  DecayTail out;
  out.s = (q[deg - 1] - p[deg - 1]) / q[deg];
  if (out.s <= Rational(1)) throw CannotBound("terms decay like k^-" + out.s.to_string() + ", not summable");
  // |sigma(k)| <= 1 on [m, inf) gives |T(k)| <= |T(m)|.
  if (!nonnegative_from(add(mul(q, q), neg(mul(p, p))), Rational(m)))
    throw CannotBound("cannot show |T(k+1)/T(k)| <= 1 from k = " + std::to_string(m));

  // sigma(1/x) as a power series in x = 1/k.
  constexpr long kMaxOrder = 32;
  const std::size_t n = kMaxOrder + 2;
  Poly pt(n, Rational(0)), qt(n, Rational(0));
  for (std::size_t i = 0; i <= deg && i < n; ++i) {
    pt[i] = p[deg - i];
    qt[i] = q[deg - i];
  }
  Poly sigma = series_mul(pt, series_inverse(qt, n), n);

  // rho(k) = sum_i r_i k^(1-i) solves rho(k) - sigma(k) rho(k+1) = 1 + O(k^-(d+1)).
  // In x: r(x) - sigma (1+x) r(x/(1+x)) = x; the x^(i+1) coefficient of the
  // r_i part is (i + s - 1) r_i.
  std::vector<Poly> w;
  Poly r;
  for (long o = 1; o <= kMaxOrder + 1; ++o) {
    long i = o - 1;
    w.push_back(series_mul(sigma, binomial_series(1 - i, n), n));
    Rational acc(o == 1 ? 1 : 0);
    for (long j = 0; j + 2 <= o; ++j) acc += r[j] * w[j][o - j];
    r.push_back(acc / (Rational(o - 2) + out.s));
  }

  const Rational mm(m);
  bool have = false;
  int worse = 0;
  for (long d = 1; d <= kMaxOrder; ++d) {
    Poly a(d + 1, Rational(0));  // rho(k) = a(k) / k^(d-1)
    for (long i = 0; i <= d; ++i) a[d - i] = r[i];
    Poly kd = power(Poly{Rational(0), Rational(1)}, d - 1);
    Poly k1d = power(Poly{Rational(1), Rational(1)}, d - 1);
    Poly den = mul(mul(q, kd), k1d);
    Poly num = add(add(den, neg(mul(mul(a, k1d), q))), mul(mul(p, shift_one(a)), kd));
    Rational residual(0);
    if (!num.empty()) {
      long dn = static_cast<long>(num.size()) - 1, dd = static_cast<long>(den.size()) - 1;
      long g = dd - dn;
      if (g < 2) continue;
      Rational upper(0), lower = den.back().abs();
      for (long i = 0; i <= dn; ++i) upper += num[i].abs() * rpow(mm, i - dn);
      for (long i = 0; i < dd; ++i) lower -= den[i].abs() * rpow(mm, i - dd);
      if (lower <= Rational(0)) continue;
      residual = upper / lower * (rpow(mm, -g) + rpow(mm, 1 - g) / Rational(g - 1));
    }
    if (!have || residual < out.residual) {
      have = true;
      worse = 0;
      out.residual = residual;
      out.order = static_cast<int>(d);
      out.rho = Rational(0);
      for (long i = 0; i <= d; ++i) out.rho += r[i] * rpow(mm, 1 - i);
      if (residual.is_zero()) break;
    } else if (++worse >= 3) {
      break;
    }
  }
  if (!have) throw CannotBound("no usable asymptotic tail estimate at m = " + std::to_string(m));
  return out;
}

HPFloat sum_series(const SeriesSpec& spec, long terms, long precision_bits, Truncation mode) {
  if (terms < 0) throw MalformedInput("negative term count");
  validate(spec);
  const long end = spec.start + terms;
  RatioPolys r = ratio_polys(spec);
  if (mode == Truncation::geometric) {
    Rational tail = tail_bound(spec, end);
    HPFloat sum(precision_bits);
    if (terms > 0) sum = partial_sum(spec, r, spec.start, end, precision_bits).first;
    sum.add_error(tail);
    return sum;
  }
  DecayTail dt = decay_tail(spec, std::max(end, 1L));
  auto [sum, t_end] = partial_sum(spec, r, spec.start, std::max(end, 1L), precision_bits);
  Upper bound(t_end);
  sum += t_end * dt.rho;
  mpfr_t res;
  mpfr_init2(res, kErrorBits);
  mpfr_set_q(res, dt.residual.get().get_mpq_t(), MPFR_RNDU);
  mpfr_mul(res, res, bound.v, MPFR_RNDU);
  sum.add_error(res);
  mpfr_clear(res);
  return sum;
}

int digits_agreement(const HPFloat& x, const HPFloat& y) {
  const long bits = std::max(x.precision_bits(), y.precision_bits()) + 32;
  mpfr_t diff, scale, err, t;
  mpfr_inits2(bits, diff, scale, err, t, static_cast<mpfr_ptr>(nullptr));
  mpfr_sub(diff, x.value(), y.value(), MPFR_RNDU);
  mpfr_abs(diff, diff, MPFR_RNDU);
  mpfr_abs(scale, y.value(), MPFR_RNDD);
  if (mpfr_cmp_ui(scale, 1) < 0) mpfr_set_ui(scale, 1, MPFR_RNDN);
  mpfr_add(err, x.abs_error(), y.abs_error(), MPFR_RNDU);

  long d = static_cast<long>(std::floor(static_cast<double>(std::min(x.precision_bits(), y.precision_bits()) - 1) *
                                        std::log10(2.0)));
  if (!mpfr_zero_p(diff)) {
    mpfr_div(t, diff, scale, MPFR_RNDU);
    mpfr_log10(t, t, MPFR_RNDU);
    mpfr_neg(t, t, MPFR_RNDD);
    mpfr_floor(t, t);
    d = std::min(d, mpfr_get_si(t, MPFR_RNDD));
  }
  if (!mpfr_zero_p(err)) {
    mpfr_div(t, scale, err, MPFR_RNDD);
    mpfr_log10(t, t, MPFR_RNDD);
    mpfr_floor(t, t);
    d = std::min(d, mpfr_get_si(t, MPFR_RNDD));
  }
  mpfr_clears(diff, scale, err, t, static_cast<mpfr_ptr>(nullptr));
  return static_cast<int>(std::clamp(d, 0L, static_cast<long>(INT_MAX)));
}

HPFloat target_value(const TargetConstant& t, long precision_bits) {
  HPFloat base(precision_bits);
  switch (t.base) {
    case ConstantBase::one:
      base = HPFloat::from_rational(Rational(1), precision_bits);
      break;
    case ConstantBase::inv_pi:
      base = HPFloat::from_rational(Rational(1), precision_bits) / ref_pi(precision_bits);
      break;
    case ConstantBase::inv_pi2: {
      HPFloat pi = ref_pi(precision_bits);
      base = HPFloat::from_rational(Rational(1), precision_bits) / (pi * pi);
      break;
    }
    case ConstantBase::pi2: {
      HPFloat pi = ref_pi(precision_bits);
      base = pi * pi;
      break;
    }
    case ConstantBase::zeta3:
      base = ref_zeta3(precision_bits);
      break;
  }
  base *= t.coefficient;
  if (!t.addend.is_zero()) base += HPFloat::from_rational(t.addend, precision_bits);
  return base;
}

std::string_view status_name(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::pass:
      return "pass";
    case VerifyStatus::fail:
      return "FAIL";
    case VerifyStatus::skipped_rate_1:
      return "skipped-rate-1";
  }
  return "?";
}

bool allowed_failure(const EvalReport& r) {
  return r.status == VerifyStatus::fail && r.note && r.note->find(kTranscriptionNote) != std::string::npos;
}

EvalReport verify_entry(const CatalogEntry& entry, int min_digits, long max_terms) {
  auto t0 = std::chrono::steady_clock::now();
  EvalReport rep;
  rep.entry_id = entry.id;
  rep.rate = entry.expected_rate;
  rep.requested_digits = min_digits;
  rep.note = entry.note;
  auto finish = [&] {
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  };
  if (min_digits < 1) throw MalformedInput("min_digits must be positive");
  if (entry.expected_rate.abs() == Rational(1)) {
    rep.status = VerifyStatus::skipped_rate_1;
    rep.detail = entry.id == "glaisher" ? "rate 1; exact check: partial-sums --check glaisher"
                                        : "rate 1; no geometric tail bound";
    return finish();
  }
  long wanted = static_cast<long>(std::ceil(min_digits / neg_log10_abs(entry.expected_rate))) + 10;
  // Terms with polynomial growth in front of z^k need more than the rate
  // alone suggests; grow by 25% until the tail bound clears the goal.
  const Rational goal = Rational(1, 10).pow(min_digits + 2);
  try {
    while (wanted < max_terms && tail_bound(entry.series, entry.series.start + wanted) > goal)
      wanted += std::max(1L, wanted / 4);
  } catch (const MathError&) {
  }
  rep.terms_used = std::min(wanted, max_terms);
  rep.precision_bits = 4L * min_digits + 64;
  rep.computed = HPFloat(rep.precision_bits);
  if (!entry.target) {
    rep.status = VerifyStatus::fail;
    rep.detail = "no target constant";
    return finish();
  }
  rep.target = target_value(*entry.target, rep.precision_bits);
  try {
    rep.computed = sum_series(entry.series, rep.terms_used, rep.precision_bits);
  } catch (const MathError& e) {
    rep.status = VerifyStatus::fail;
    rep.detail = e.what();
    return finish();
  }
  rep.abs_diff = (rep.computed - rep.target).abs();
  rep.digits_agreement = digits_agreement(rep.computed, rep.target);

  mpfr_t combined;
  mpfr_init2(combined, kErrorBits);
  mpfr_add(combined, rep.computed.abs_error(), rep.target.abs_error(), MPFR_RNDU);
  bool consistent = mpfr_cmp(rep.abs_diff.value(), combined) <= 0;
  mpfr_clear(combined);

  rep.pass = rep.digits_agreement >= min_digits && consistent;
  rep.status = rep.pass ? VerifyStatus::pass : VerifyStatus::fail;
  if (!consistent) {
    rep.detail = "difference " + rep.abs_diff.to_string(6) + " exceeds the combined error bounds";
  } else if (!rep.pass) {
    rep.detail = std::to_string(rep.digits_agreement) + " digits < " + std::to_string(min_digits) +
                 (wanted > max_terms ? " (term budget " + std::to_string(max_terms) + " reached)" : "");
  }
  return finish();
}

std::string render_reports(const std::vector<EvalReport>& reports, ReportFormat format, bool timing) {
  std::ostringstream os;
  auto ms = [&](const EvalReport& r) {
    if (!timing) return std::string("-");
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(1);
    s << r.elapsed_ms;
    return s.str();
  };
  if (format == ReportFormat::csv) {
    os << "id,rate,terms,digits,pass,ms\n";
    for (const auto& r : reports)
      os << r.entry_id << "," << r.rate << "," << r.terms_used << "," << r.digits_agreement << ","
         << status_name(r.status) << "," << ms(r) << "\n";
    return os.str();
  }
  std::size_t w = 2;
  for (const auto& r : reports) w = std::max(w, r.entry_id.size());
  auto pad = [](std::string s, std::size_t n, bool right = false) {
    if (s.size() >= n) return s;
    return right ? std::string(n - s.size(), ' ') + s : s + std::string(n - s.size(), ' ');
  };
  os << pad("id", w) << "  " << pad("rate", 9) << "  " << pad("terms", 6, true) << "  "
     << pad("digits", 6, true) << "  " << pad("pass", 14) << "  " << pad("ms", 8, true) << "\n";
  for (const auto& r : reports) {
    os << pad(r.entry_id, w) << "  " << pad(r.rate.to_string(), 9) << "  "
       << pad(std::to_string(r.terms_used), 6, true) << "  " << pad(std::to_string(r.digits_agreement), 6, true)
       << "  " << pad(std::string(status_name(r.status)), 14) << "  " << pad(ms(r), 8, true);
    if (!r.detail.empty()) os << "  " << r.detail;
    os << "\n";
  }
  return os.str();
}

IdentityCheck check_glaisher_partial(long n_max) {
  if (n_max < 0) throw MalformedInput("n_max must be >= 0");
  IdentityCheck out;
  Rational lhs(0);
  Rational u(1);     // (-1/2)_k / k!
  Rational v(1);     // (1/2)_n / (n+1)!
  for (long n = 0; n <= n_max; ++n) {
    lhs += u.pow(4) * Rational(1 - 4 * n);
    Rational np1(n + 1);
    Rational rhs = np1.pow(4) * Rational(8 * n * n + 4 * n + 1) * v.pow(4);
    if (lhs != rhs) return {false, n, lhs, rhs};
    u *= Rational(2 * n - 1, 2 * (n + 1));
    v *= Rational(2 * n + 1, 2 * (n + 2));
  }
  return out;
}

IdentityCheck check_guillera_partial(long n_max) {
  if (n_max < 0) throw MalformedInput("n_max must be >= 0");
  IdentityCheck out;
  Rational lhs(0);
  Rational u(1);  // (1/2)_k / (2)_k
  Rational v(1);  // (3/2)_n / (2)_n
  for (long n = 0; n <= n_max; ++n) {
    lhs += u.pow(4) * Rational(4 * n + 3);
    Rational rhs = Rational(16) - v.pow(4) * Rational(8 * n * n + 20 * n + 13);
    if (lhs != rhs) return {false, n, lhs, rhs};
    u *= Rational(2 * n + 1, 2 * (n + 2));
    v *= Rational(2 * n + 3, 2 * (n + 2));
  }
  return out;
}

SeriesSpec identity8_left(const Rational& a) {
  SeriesSpec s;
  s.prefactor = Rational(8) * a;
  s.ratio_z = Rational(1);
  s.num_params.assign(4, Rational(1, 2));
  s.den_params.assign(4, a + Rational(1));
  s.factor_num = MultiPoly::univariate(Var::k, std::vector<Rational>{Rational(2) * a + Rational(1), Rational(4)});
  return s;
}

SeriesSpec identity8_right(const Rational& a) {
  SeriesSpec s;
  s.ratio_z = Rational(-1, 4);
  s.num_params.assign(5, a + Rational(1, 2));
  s.den_params.assign(5, a + Rational(1));
  s.factor_num = MultiPoly::univariate(
      Var::k, std::vector<Rational>{Rational(20) * a * a + Rational(8) * a + Rational(1),
                                    Rational(40) * a + Rational(8), Rational(20)});
  return s;
}

Identity8Result check_identity8(const Rational& a, int min_digits, long term_budget) {
  if (a <= Rational(0)) throw MalformedInput("the shifted Guillera identity needs a > 0");
  if (min_digits < 1) throw MalformedInput("min_digits must be positive");
  Identity8Result out;
  const long bits = 4L * min_digits + 64;
  out.right_terms = static_cast<long>(std::ceil(min_digits / std::log10(4.0))) + 10;
  out.right = sum_series(identity8_right(a), out.right_terms, bits);
  const SeriesSpec left = identity8_left(a);
  const double goal = -min_digits - 1.0;
  for (long m = 64;; m *= 2) {
    if (m > term_budget)
      throw ConvergenceTooSlow("shifted Guillera identity: left side at a = " + a.to_string() + " needs more than " +
                               std::to_string(term_budget) + " terms for " + std::to_string(min_digits) +
                               " digits");
    try {
      out.left = sum_series(left, m, bits, Truncation::polynomial_decay);
    } catch (const CannotBound&) {
      continue;
    }
    out.left_terms = m;
    if (out.left.error_log10() <= goal) break;
  }
  out.digits = digits_agreement(out.left, out.right);
  out.ok = out.digits >= min_digits;
  return out;
}

}  // namespace hyperaccel
