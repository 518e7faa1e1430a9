#include "hyperaccel/hyperterm.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hyperaccel/errors.hpp"

namespace hyperaccel {

namespace {

constexpr long kRootScanLimit = 1000000;
constexpr long kMonotoneSearchSpan = 4096;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

// Coefficients of p(x0 + t) in t.
std::vector<Rational> taylor_shift(std::vector<Rational> c, const Rational& x0) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += x0 * c[j];
  return c;
}

std::vector<Rational> poly_mul(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.empty() || y.empty()) return {};
  std::vector<Rational> r(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  return r;
}

std::vector<Rational> poly_sub(std::vector<Rational> x, const std::vector<Rational>& y) {
  if (x.size() < y.size()) x.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] -= y[i];
  return x;
}

std::vector<Rational> poly_derivative(const std::vector<Rational>& x) {
  std::vector<Rational> r;
  for (std::size_t i = 1; i < x.size(); ++i) r.push_back(x[i] * Rational(static_cast<long>(i)));
  return r;
}

std::vector<Rational> negated(std::vector<Rational> x) {
  for (auto& c : x) c = -c;
  return x;
}

bool constant_sign_from(const std::vector<Rational>& p, const Rational& x0) {
  return nonnegative_from(p, x0) || nonnegative_from(negated(p), x0);
}

// Q has no zero on [x0, inf) and |P/Q| is monotone there.
bool ratio_monotone_from(const std::vector<Rational>& p, const std::vector<Rational>& q,
                         const Rational& x0) {
  auto shifted_q = taylor_shift(q, x0);
  if (shifted_q.empty() || shifted_q[0].is_zero()) return false;
  if (!constant_sign_from(q, x0)) return false;
  // d/dk (P/Q)^2 has the sign of P (P'Q - PQ') Q.
  auto s = poly_mul(poly_mul(p, poly_sub(poly_mul(poly_derivative(p), q),
                                         poly_mul(p, poly_derivative(q)))),
                    q);
  return constant_sign_from(s, x0);
}

Rational eval_univariate(const MultiPoly& p, long k) {
  return p.evaluate({{Var::k, Rational(k)}});
}

void check_integer_roots(const MultiPoly& q, long start) {
  auto c = q.univariate_coefficients(Var::k);
  if (c.empty()) throw MalformedInput("zero summand denominator");
  if (c.size() == 1) return;
  // Fujiwara bound: every root satisfies |x| <= 2 max |c_{d-i}/c_d|^{1/i};
  // evaluated in long double with a safety margin.
  const std::size_t d = c.size() - 1;
  long double lead = std::fabs(c.back().to_double()), fb = 0;
  for (std::size_t i = 1; i <= d; ++i) {
    long double r = std::fabs(static_cast<long double>(c[d - i].to_double())) / lead;
    if (i == d) r /= 2;
    fb = std::max(fb, std::pow(r, 1.0L / static_cast<long double>(i)));
  }
  long double limit = 2 * fb * 1.01L + 2;
  if (!(limit <= static_cast<long double>(kRootScanLimit)))
    throw UnsupportedSpec("summand denominator root bound too large to scan");
  mpz_class bound = static_cast<long>(std::ceil(limit));
  long hi = bound.get_si();
  for (long k = std::max(start, -hi); k <= hi; ++k)
    if (eval_univariate(q, k).is_zero())
      throw MalformedInput("summand denominator vanishes at k=" + std::to_string(k));
}

}  // namespace

Rational pochhammer(const Rational& base, long m) {
  Rational r(1);
  if (m >= 0) {
    for (long i = 0; i < m; ++i) r *= base + Rational(i);
    return r;
  }
  for (long i = 1; i <= -m; ++i) {
    Rational f = base - Rational(i);
    if (f.is_zero())
      throw PoleError("pochhammer pole: (" + base.to_string() + ")_" + std::to_string(m));
    r *= f;
  }
  return r.inverse();
}

Rational reciprocal_pochhammer(const Rational& base, long m) {
  if (m >= 0) {
    Rational p = pochhammer(base, m);
    if (p.is_zero())
      throw PoleError("reciprocal of vanishing (" + base.to_string() + ")_" + std::to_string(m));
    return p.inverse();
  }
  Rational r(1);
  for (long i = 1; i <= -m; ++i) r *= base - Rational(i);
  return r;
}

std::string TargetConstant::to_string() const {
  static constexpr std::array<const char*, 5> names = {"1", "1/pi", "1/pi^2", "pi^2", "zeta3"};
  std::string s = coefficient.to_string() + " * " + names[static_cast<std::size_t>(base)];
  if (!addend.is_zero()) s += " + " + addend.to_string();
  return s;
}

TargetConstant TargetConstant::parse(std::string_view text) {
  auto star = text.find('*');
  if (star == std::string_view::npos)
    throw MalformedInput("target must have the form '<rational> * <base> [+ <rational>]'");
  TargetConstant t;
  t.coefficient = Rational::parse(trim(text.substr(0, star)));
  std::string rest = trim(text.substr(star + 1));
  static const std::array<std::pair<const char*, ConstantBase>, 5> bases = {{
      {"1/pi^2", ConstantBase::inv_pi2},
      {"1/pi", ConstantBase::inv_pi},
      {"pi^2", ConstantBase::pi2},
      {"zeta3", ConstantBase::zeta3},
      {"1", ConstantBase::one},
  }};
  bool matched = false;
  for (const auto& [name, base] : bases) {
    std::string_view nv(name);
    if (rest.compare(0, nv.size(), nv) == 0) {
      std::string tail = trim(std::string_view(rest).substr(nv.size()));
      if (!tail.empty() && tail[0] != '+') continue;
      t.base = base;
      rest = tail;
      matched = true;
      break;
    }
  }
  if (!matched) throw MalformedInput("unknown target base in '" + std::string(text) + "'");
  if (!rest.empty()) t.addend = Rational::parse(trim(std::string_view(rest).substr(1)));
  return t;
}

void validate(const SeriesSpec& spec) {
  if (spec.num_params.size() != spec.den_params.size())
    throw UnsupportedSpec("unbalanced parameter lists (" + std::to_string(spec.num_params.size()) +
                          " over " + std::to_string(spec.den_params.size()) + ")");
  for (const auto* p : {&spec.factor_num, &spec.factor_den})
    for (Var v : kAllVars)
      if (v != Var::k && p->uses(v))
        throw MalformedInput("summand factor is not univariate in k: " + p->to_string());
  if (spec.factor_num.is_zero()) throw MalformedInput("zero summand factor");
  if (spec.prefactor.is_zero()) throw MalformedInput("zero prefactor");
  if (spec.ratio_z.is_zero()) throw MalformedInput("zero ratio");
  for (const auto& v : spec.den_params)
    if (v.is_integer() && v.sign() <= 0)
      throw MalformedInput("denominator parameter " + v.to_string() +
                           " makes a Pochhammer pole in the summation range");
  check_integer_roots(spec.factor_den, spec.start);
}

Rational term_value(const SeriesSpec& spec, long k) {
  if (k < spec.start)
    throw MalformedInput("index " + std::to_string(k) + " below series start " +
                         std::to_string(spec.start));
  Rational t = spec.prefactor * spec.ratio_z.pow(k);
  for (const auto& u : spec.num_params) t *= pochhammer(u, k);
  for (const auto& v : spec.den_params) {
    Rational p = pochhammer(v, k);
    if (p.is_zero()) throw PoleError("pochhammer (" + v.to_string() + ")_" + std::to_string(k) + " in denominator vanishes");
    t /= p;
  }
  Rational q = eval_univariate(spec.factor_den, k);
  if (q.is_zero()) throw PoleError("summand denominator vanishes at k=" + std::to_string(k));
  return t * eval_univariate(spec.factor_num, k) / q;
}

RatFun term_ratio(const SeriesSpec& spec) {
  MultiPoly num(spec.ratio_z), den(Rational(1));
  for (const auto& u : spec.num_params) num *= MultiPoly::linear(Var::k, u);
  for (const auto& v : spec.den_params) den *= MultiPoly::linear(Var::k, v);
  MultiPoly k1 = MultiPoly::linear(Var::k, Rational(1));
  RatFun factor_shift = RatFun(spec.factor_num.substitute(Var::k, k1) * spec.factor_den,
                               spec.factor_num * spec.factor_den.substitute(Var::k, k1));
  return normalize(RatFun(num, den)) * normalize(factor_shift);
}

Rational asymptotic_rate(const SeriesSpec& spec) {
  if (spec.num_params.size() != spec.den_params.size())
    throw UnsupportedSpec("asymptotic rate requires balanced parameter lists");
  return spec.ratio_z;
}

Rational raw_f_value(const RawF& raw, long k) {
  Rational top = pochhammer(raw.a, k + raw.b);
  Rational bottom = reciprocal_pochhammer(Rational(1) + raw.n - raw.a, k + raw.b);
  return (top * bottom).pow(4) * (raw.n + Rational(2 * k + 2 * raw.b));
}

SeriesSpec shift_normalize(const RawF& raw) {
  Rational lower = Rational(1) + raw.n - raw.a;
  Rational top = pochhammer(raw.a, raw.b);
  Rational bottom = pochhammer(lower, raw.b);
  if (top.is_zero() || bottom.is_zero())
    throw PoleError("shift constant (" + raw.a.to_string() + ")_" + std::to_string(raw.b) +
                    " or (" + lower.to_string() + ")_" + std::to_string(raw.b) + " vanishes");
  SeriesSpec spec;
  spec.prefactor = (top / bottom).pow(4);
  spec.ratio_z = Rational(1);
  spec.num_params.assign(4, raw.a + Rational(raw.b));
  spec.den_params.assign(4, lower + Rational(raw.b));
  spec.factor_num = MultiPoly::variable(Var::k) * Rational(2) +
                    MultiPoly(raw.n + Rational(2 * raw.b));
  return spec;
}

bool nonnegative_from(const std::vector<Rational>& ascending, const Rational& x0) {
  for (const auto& c : taylor_shift(ascending, x0))
    if (c.sign() < 0) return false;
  return true;
}

RatioBound ratio_supremum(const SeriesSpec& spec, long m) {
  if (m < spec.start) throw MalformedInput("tail start below series start");
  Rational limit = asymptotic_rate(spec).abs();
  RatFun r = term_ratio(spec);
  auto p = r.num().univariate_coefficients(Var::k);
  auto q = r.den().univariate_coefficients(Var::k);
  long witness = -1;
  for (long step = 0; step <= kMonotoneSearchSpan; step = step == 0 ? 8 : 2 * step) {
    if (ratio_monotone_from(p, q, Rational(m + step))) {
      witness = m + step;
      break;
    }
  }
  if (witness < 0)
    throw CannotBound("no monotonicity witness for the term ratio within " +
                      std::to_string(kMonotoneSearchSpan) + " indices of " + std::to_string(m));
  Rational rho = limit;
  for (long k = m; k <= witness; ++k) {
    Rational v;
    try {
      v = evaluate(r, {{Var::k, Rational(k)}}).abs();
    } catch (const PoleError&) {
      throw CannotBound("term ratio has a pole at k=" + std::to_string(k));
    }
    rho = std::max(rho, v);
  }
  return {rho, witness};
}

Rational tail_bound(const SeriesSpec& spec, long m) {
  if (asymptotic_rate(spec).abs() >= Rational(1))
    throw CannotBound("rate " + spec.ratio_z.to_string() + " series is not geometrically dominated");
  RatioBound rb = ratio_supremum(spec, m);
  if (rb.rho >= Rational(1))
    throw CannotBound("term ratio supremum " + rb.rho.to_string() + " is not below 1");
  return term_value(spec, m).abs() / (Rational(1) - rb.rho);
}

}  // namespace hyperaccel
