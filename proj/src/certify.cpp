#include "hyperaccel/certify.hpp"

#include <random>

#include "hyperaccel/errors.hpp"

namespace hyperaccel {

namespace {

MultiPoly var(Var v) { return MultiPoly::variable(v); }

Assignment point_of(const RawF& raw, long k) {
  return {{Var::a, raw.a}, {Var::b, Rational(raw.b)}, {Var::n, raw.n}, {Var::k, Rational(k)}};
}

// Cleared numerator of p1 sigma_n + p2 - R(n,k+1) sigma_k + R(n,k).
std::vector<RatFun> relation_terms(const FFamily& fam, const Certificate& cert) {
  auto [sn, sk] = f_shift_ratios(fam);
  MultiPoly k1 = var(Var::k) + MultiPoly(Rational(1));
  RatFun r_next = cert.R.substitute(Var::k, k1);
  return {RatFun(cert.p1) * sn, RatFun(cert.p2), -(r_next * sk), cert.R};
}

}  // namespace

FFamily standard_family() {
  FFamily fam;
  fam.num_base = var(Var::a);
  fam.den_base = MultiPoly(Rational(1)) + var(Var::n) - var(Var::a);
  fam.linear_factor = var(Var::n) + Rational(2) * var(Var::k) + Rational(2) * var(Var::b);
  return fam;
}

std::pair<RatFun, RatFun> f_shift_ratios(const FFamily& fam) {
  MultiPoly kb = var(Var::k) + var(Var::b);
  MultiPoly n1 = var(Var::n) + MultiPoly(Rational(1));
  MultiPoly k1 = var(Var::k) + MultiPoly(Rational(1));
  if (fam.den_base.substitute(Var::n, n1) - fam.den_base != MultiPoly(Rational(1)))
    throw UnsupportedSpec("lower Pochhammer base must advance by one with n");
  if (fam.num_base.uses(Var::n))
    throw UnsupportedSpec("upper Pochhammer base must not depend on n");
  // (d+1)_m / (d)_m = (d+m)/d and (x)_{m+1}/(x)_m = x+m.
  MultiPoly dm = fam.den_base + kb;
  MultiPoly um = fam.num_base + kb;
  const int e = fam.multiplicity;
  RatFun sigma_n = normalize(RatFun(fam.den_base.pow(e) * fam.linear_factor.substitute(Var::n, n1),
                                    dm.pow(e) * fam.linear_factor));
  RatFun sigma_k = normalize(RatFun(um.pow(e) * fam.linear_factor.substitute(Var::k, k1),
                                    dm.pow(e) * fam.linear_factor));
  return {sigma_n, sigma_k};
}

Certificate theorem1_certificate() {
  Certificate c;
  c.R = normalize(RatFun(parse_poly("(a-n-1)^4*(10*a^2 - 8*a*b - 8*a*k - 14*a*n - 6*a + 2*b^2 + "
                                    "4*b*k + 6*b*n + 2*b + 2*k^2 + 6*k*n + 2*k + 5*n^2 + 4*n + 1)"),
                         parse_poly("2*b + 2*k + n")));
  c.p1 = parse_poly("(2*a - n - 1)^5");
  c.p2 = parse_poly("2*(4*a - 2*n - 1)*(a - n - 1)^4");
  return c;
}

namespace {

std::pair<Rational, Rational> sides_at(const RatFun& sn, const RatFun& sk,
                                       const Certificate& cert, const Assignment& point) {
  Assignment next = point;
  next[Var::k] = point.at(Var::k) + Rational(1);
  Rational lhs = cert.p1.evaluate(point) * evaluate(sn, point) + cert.p2.evaluate(point);
  Rational rhs = evaluate(cert.R, next) * evaluate(sk, point) - evaluate(cert.R, point);
  return {lhs, rhs};
}

}  // namespace

std::pair<Rational, Rational> certificate_sides(const FFamily& fam, const Certificate& cert,
                                                const Assignment& point) {
  auto [sn, sk] = f_shift_ratios(fam);
  return sides_at(sn, sk, cert, point);
}

CheckResult check_certificate(const FFamily& fam, const Certificate& cert,
                              const CheckOptions& options) {
  if (cert.r != 1) throw UnsupportedSpec("only first-order certificates (r = 1) are supported");
  if (cert.p2.is_zero()) throw MalformedInput("certificate p2 is identically zero");
  if (options.mode == CheckMode::symbolic) {
    auto terms = relation_terms(fam, cert);
    // Exact zero test on the cleared numerator, no gcd needed.
    MultiPoly cleared;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      MultiPoly part = terms[i].num();
      for (std::size_t j = 0; j < terms.size(); ++j)
        if (j != i) part *= terms[j].den();
      cleared += part;
    }
    if (cleared.is_zero()) return {true, ""};
    RatFun total = (terms[0] + terms[1]) + (terms[2] + terms[3]);
    return {false, "nonzero normal form: " + total.to_string()};
  }

  // Coordinates are integers drawn from [-2^20, 2^20], far wider than twice
  // the total degree of the cleared relation.
  constexpr long kSpan = 1L << 20;
  std::mt19937_64 rng(options.seed);
  auto draw = [&rng] {
    return Rational(static_cast<long>(rng() % static_cast<std::uint64_t>(2 * kSpan + 1)) - kSpan);
  };
  auto [sn, sk] = f_shift_ratios(fam);
  int tested = 0, attempts = 0;
  while (tested < options.points) {
    if (++attempts > 20 * options.points + 100)
      throw MathError("randomized check kept hitting poles");
    Assignment x{{Var::n, draw()}, {Var::k, draw()}, {Var::a, draw()}, {Var::b, draw()}};
    std::pair<Rational, Rational> sides;
    try {
      sides = sides_at(sn, sk, cert, x);
    } catch (const PoleError&) {
      continue;
    }
    ++tested;
    if (sides.first != sides.second)
      return {false, "mismatch at " + to_string(x) + ": lhs " + sides.first.to_string() + ", rhs " +
                         sides.second.to_string()};
  }
  return {true, ""};
}

std::vector<Certificate> perturbed_certificates(const Certificate& cert, int count) {
  std::vector<Certificate> out;
  std::vector<std::pair<int, Exponents>> slots;
  auto collect = [](int which, const MultiPoly& p) {
    std::vector<std::pair<int, Exponents>> s;
    for (const auto& [e, c] : p.terms()) s.emplace_back(which, e);
    return s;
  };
  std::vector<std::vector<std::pair<int, Exponents>>> lists = {
      collect(0, cert.p1), collect(1, cert.p2), collect(2, cert.R.num())};
  for (std::size_t i = 0; static_cast<int>(slots.size()) < count; ++i) {
    bool any = false;
    for (const auto& l : lists) {
      if (i < l.size() && static_cast<int>(slots.size()) < count) {
        slots.push_back(l[i]);
        any = true;
      }
    }
    if (!any) break;
  }
  for (const auto& [which, e] : slots) {
    Certificate c = cert;
    MultiPoly bump = MultiPoly::monomial(e, Rational(1));
    if (which == 0) c.p1 = c.p1 + bump;
    if (which == 1) c.p2 = c.p2 + bump;
    if (which == 2) c.R = RatFun(c.R.num() + bump, c.R.den());
    out.push_back(std::move(c));
  }
  return out;
}

Rational certificate_R(const Certificate& cert, const RawF& raw, long k) {
  return evaluate(cert.R, point_of(raw, k));
}

Rational g_at_zero(const RawF& raw) {
  return certificate_R(theorem1_certificate(), raw, 0) * raw_f_value(raw, 0);
}

bool tail_condition(const Rational& a, const Rational& n) {
  return a < (Rational(2) * n + Rational(1)) / Rational(4);
}

}  // namespace hyperaccel
