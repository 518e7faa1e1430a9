#include "hyperaccel/accel.hpp"

#include <algorithm>

#include "hyperaccel/errors.hpp"

namespace hyperaccel {

namespace {

const Rational kQuarter(-1, 4);

Assignment abn(const AccelParams& p) {
  return {{Var::a, p.a}, {Var::b, Rational(p.b)}, {Var::n, p.n}};
}

const RatFun& mathcal_R_form() {
  static const RatFun f(
      parse_poly("(n - 2*a + 1)^5*(10*a^2 - 8*a*b - 14*a*j - 14*a*n - 6*a + 2*b^2 + 6*b*j + "
                 "6*b*n + 2*b + 5*j^2 + 10*j*n + 4*j + 5*n^2 + 4*n + 1)"),
      parse_poly("(2*n - 4*a + 1)*(2*n - 4*a + 2*j + 1)*(n - a + 1)^4"));
  return f;
}

const MultiPoly& mathcal_R_bracket_form() {
  static const MultiPoly f = parse_poly(
      "10*a^2 - 8*a*b - 14*a*j - 14*a*n - 6*a + 2*b^2 + 6*b*j + 6*b*n + 2*b + 5*j^2 + 10*j*n + "
      "4*j + 5*n^2 + 4*n + 1");
  return f;
}

const MultiPoly& q1_form() {
  static const MultiPoly f = parse_poly(
      "-10*a^2 + 8*a*b + 22*a*j + 14*a*n + 28*a - 2*b^2 - 10*b*j - 6*b*n - 12*b - 13*j^2 - "
      "16*j*n - 32*j - 5*n^2 - 20*n - 20");
  return f;
}

const MultiPoly& q2_form() {
  static const MultiPoly f = parse_poly("4*a - 2*j - 2*n - 3");
  return f;
}

const RatFun& s1_form() {
  static const RatFun f(parse_poly("(n - 2*a + 1)^5"), parse_poly("4*(4*a - 2*n - 1)*(n - a + 1)^4"));
  return f;
}

const RatFun& s2_form() {
  static const RatFun f(parse_poly("(j + n - 2*a + 2)^5*(2*b + 3*j + n + 4)"),
                        parse_poly("(b + 2*j + n - a + 3)^4"));
  return f;
}

Rational checked(const char* what, const std::string& params, auto&& compute) {
  try {
    return compute();
  } catch (const PoleError& e) {
    throw PoleError(std::string(what) + " degenerates at " + params + ": " + e.what());
  }
}

void require_nonzero(const Rational& v, const std::string& what, const AccelParams& p) {
  if (v.is_zero()) throw PoleError(what + " vanishes at " + p.to_string());
}

// A Pochhammer symbol that appears in a denominator.
void require_finite_nonzero(const Rational& base, long m, const std::string& what,
                            const AccelParams& p) {
  try {
    reciprocal_pochhammer(base, m);
  } catch (const PoleError&) {
    throw PoleError(what + " vanishes at " + p.to_string());
  }
}

void require_finite(const Rational& base, long m, const std::string& what, const AccelParams& p) {
  try {
    pochhammer(base, m);
  } catch (const PoleError&) {
    throw PoleError(what + " has a pole at " + p.to_string());
  }
}

RatFun in_j(const RatFun& f, const AccelParams& p) { return normalize(f.partial_evaluate(abn(p))); }

MultiPoly j_poly() { return MultiPoly::variable(Var::j); }

// Rising product prod_{i<count} (x + i) as a polynomial.
MultiPoly rising(const MultiPoly& x, long count) {
  MultiPoly r(Rational(1));
  for (long i = 0; i < count; ++i) r *= x + MultiPoly(Rational(i));
  return r;
}

Rational pow_self(long m) { return m == 0 ? Rational(1) : Rational(m).pow(m); }

// Gamma-function collapse of one factor into constant, geometric and fixed
// parameter parts: (B + nu k)_{I + iota k} = Gamma(A + mu k)/Gamma(B + nu k)
// with A = B + I, mu = nu + iota.
struct Collapsed {
  Rational constant{1};
  Rational power{1};
  std::vector<Rational> num, den;
};

void collapse_into(const PochFactor& f, Collapsed& out) {
  long mu = f.base1 + f.idx1, nu = f.base1;
  Rational a = f.base0 + Rational(f.idx0), b = f.base0;
  Rational c;
  try {
    c = f.exponent < 0 ? reciprocal_pochhammer(b, f.idx0) : pochhammer(b, f.idx0);
  } catch (const PoleError&) {
    throw NotCollapsible("constant (" + b.to_string() + ")_" + std::to_string(f.idx0) +
                         " is singular");
  }
  if (c.is_zero()) throw NotCollapsible("factor vanishes at the origin of the index");
  std::vector<Rational> up, down;
  for (long i = 0; i < mu; ++i) up.push_back((a + Rational(i)) / Rational(mu));
  for (long i = 0; i < nu; ++i) down.push_back((b + Rational(i)) / Rational(nu));
  Rational z = pow_self(mu) / pow_self(nu);
  int e = f.exponent;
  if (e < 0) {
    z = z.inverse();
    std::swap(up, down);
    e = -e;
  }
  for (int r = 0; r < e; ++r) {
    out.constant *= c;  // already reciprocal when e < 0
    out.power *= z;
    out.num.insert(out.num.end(), up.begin(), up.end());
    out.den.insert(out.den.end(), down.begin(), down.end());
  }
}

void cancel_params(std::vector<Rational>& num, std::vector<Rational>& den) {
  for (auto it = num.begin(); it != num.end();) {
    auto d = std::find(den.begin(), den.end(), *it);
    if (d != den.end()) {
      den.erase(d);
      it = num.erase(it);
    } else {
      ++it;
    }
  }
}

bool has_root(const MultiPoly& p, const Rational& r) {
  return !p.is_constant() && p.evaluate({{Var::k, r}}).is_zero();
}

MultiPoly drop_root(const MultiPoly& p, const Rational& r) {
  return divide_exact(p, MultiPoly::linear(Var::k, -r));
}

// Absorbs linear factors (k + x) of the summand factor into parameters:
// (x)_k (k + x) = x (x+1)_k and (k + x)/(x+1)_k = x/(x)_k.
void absorb_linear_factors(SeriesSpec& s) {
  bool changed = true;
  while (changed) {
    changed = false;
    cancel_params(s.num_params, s.den_params);
    auto try_rule = [&](MultiPoly& poly, std::vector<Rational>& list, Rational offset,
                        bool poly_is_num, bool list_is_num) {
      for (auto& u : list) {
        Rational x = u - offset;  // factor (k + x)
        if (x.is_zero() || !has_root(poly, -x)) continue;
        poly = drop_root(poly, -x);
        u = list_is_num == poly_is_num ? u + Rational(1) : u - Rational(1);
        if (poly_is_num)
          s.prefactor *= x;
        else
          s.prefactor /= x;
        return true;
      }
      return false;
    };
    changed = try_rule(s.factor_num, s.num_params, Rational(0), true, true) ||
              try_rule(s.factor_num, s.den_params, Rational(1), true, false) ||
              try_rule(s.factor_den, s.den_params, Rational(0), false, false) ||
              try_rule(s.factor_den, s.num_params, Rational(1), false, true);
  }
}

void shift_parameters(SeriesSpec& s, long shift) {
  try {
    s.prefactor *= s.ratio_z.pow(-shift);
    for (auto& u : s.num_params) {
      s.prefactor *= pochhammer(u, -shift);
      u -= Rational(shift);
    }
    for (auto& v : s.den_params) {
      Rational d = pochhammer(v, -shift);
      if (d.is_zero()) throw NotCollapsible("shifted denominator parameter vanishes");
      s.prefactor /= d;
      v -= Rational(shift);
    }
  } catch (const PoleError& e) {
    throw NotCollapsible(std::string("shift by ") + std::to_string(shift) + ": " + e.what());
  }
  MultiPoly kmj = MultiPoly::variable(Var::k) - MultiPoly(Rational(shift));
  s.factor_num = s.factor_num.substitute(Var::k, kmj);
  s.factor_den = s.factor_den.substitute(Var::k, kmj);
}

// Folds numerator/denominator parameter pairs at integer distance into the
// summand factor: (v+d)_k/(v)_k = (v+k)_d/(v)_d and
// (u)_k/(u+m)_k = (u)_m/(u+k)_m. Pairs are taken from the top of each
// residue class so the smallest parameters survive.
void merge_integer_pairs(SeriesSpec& s) {
  MultiPoly k = MultiPoly::variable(Var::k);
  std::sort(s.num_params.begin(), s.num_params.end());
  std::sort(s.den_params.begin(), s.den_params.end());
  for (std::size_t i = s.num_params.size(); i-- > 0;) {
    Rational u = s.num_params[i];
    std::size_t best = s.den_params.size();
    for (std::size_t t = s.den_params.size(); t-- > 0;) {
      if ((u - s.den_params[t]).is_integer()) {
        best = t;
        break;
      }
    }
    if (best == s.den_params.size()) continue;
    Rational v = s.den_params[best];
    long d = (u - v).num().get_si();
    if (d > 0) {
      s.factor_num *= rising(k + MultiPoly(v), d);
      s.prefactor /= pochhammer(v, d);
    } else if (d < 0) {
      s.factor_den *= rising(k + MultiPoly(u), -d);
      s.prefactor *= pochhammer(u, -d);
    }
    s.num_params.erase(s.num_params.begin() + static_cast<std::ptrdiff_t>(i));
    s.den_params.erase(s.den_params.begin() + static_cast<std::ptrdiff_t>(best));
  }
  RatFun f = normalize(RatFun(s.factor_num, s.factor_den));
  s.factor_num = f.num();
  s.factor_den = f.den();
}

void make_primitive_factors(SeriesSpec& s) {
  RatFun f = normalize(RatFun(s.factor_num, s.factor_den));
  Rational sn, sd;
  s.factor_num = primitive_integer(f.num(), &sn);
  s.factor_den = primitive_integer(f.den(), &sd);
  s.prefactor *= sd / sn;
}

}  // namespace

std::string AccelParams::to_string() const {
  return "(a,b,n)=(" + a.to_string() + "," + std::to_string(b) + "," + n.to_string() + ")";
}

Rational p1_at(const Rational& a, const Rational& n) {
  return (Rational(2) * a - n - Rational(1)).pow(5);
}

Rational p2_at(const Rational& a, const Rational& n) {
  return Rational(2) * (Rational(4) * a - Rational(2) * n - Rational(1)) * (a - n - Rational(1)).pow(4);
}

AccelParams AccelParams::make(const Rational& a, long b, const Rational& n, long range) {
  AccelParams p{a, b, n};
  if (!tail_condition(a, n))
    throw MalformedInput("parameters violate a < (2n+1)/4 at " + p.to_string());
  for (long i = 0; i <= range + 1; ++i) {
    require_nonzero(p2_at(a, n + Rational(i)), "p2(n+" + std::to_string(i) + ")", p);
    require_finite_nonzero(Rational(1) + n + Rational(i) - a, b,
                           "(1+n-a+" + std::to_string(i) + ")_b", p);
  }
  require_finite(a, b, "(a)_b", p);
  Rational c0 = n - Rational(2) * a;
  for (long j = 0; j <= range; ++j) {
    require_nonzero(Rational(2) * c0 + Rational(2 * j + 1), "2n-4a+2j+1", p);
    require_finite_nonzero(c0 + Rational(3, 2), j - 1, "(n-2a+3/2)_{j-1}", p);
    require_finite_nonzero(n - a + Rational(2), j - 1, "(n-a+2)_{j-1}", p);
    require_finite(c0 + Rational(2), j - 1, "(n-2a+2)_{j-1}", p);
    require_finite_nonzero(n - a + Rational(j + 1), b, "(n-a+j+1)_b", p);
  }
  return p;
}

void screen_t2(const AccelParams& p, long range) {
  Rational c0 = p.n - Rational(2) * p.a;
  require_nonzero(p.n - p.a + Rational(1), "n-a+1", p);
  for (long j = -1; j <= range; ++j) {
    std::string js = "j=" + std::to_string(j);
    require_nonzero(Rational(4) * p.a - Rational(2 * j) - Rational(2) * p.n - Rational(3),
                    "q2 at " + js, p);
    require_nonzero(Rational(p.b + 2 * j + 3) + p.n - p.a, "s2 denominator at " + js, p);
    require_finite_nonzero(c0 + Rational(3, 2), j, "(n-2a+3/2)_j", p);
    require_finite_nonzero(p.n - p.a + Rational(2), j, "(n-a+2)_j", p);
    require_finite(c0 + Rational(2), j, "(n-2a+2)_j", p);
    require_finite(p.a, j + p.b + 1, "(a)_{j+b+1}", p);
    require_finite_nonzero(p.n - p.a + Rational(j + 2), j + p.b + 1, "(n+j-a+2)_{j+b+1}", p);
    // Diagonal shifts used by the iterated recursion.
    long i = j + 1;
    require_finite(p.a, p.b + i, "(a)_{b+i}", p);
    require_finite_nonzero(p.n + Rational(i + 1) - p.a, p.b + i, "(n-a+1+i)_{b+i}", p);
    require_finite_nonzero(p.n + Rational(i + 2) - p.a, p.b + i, "(n-a+2+i)_{b+i}", p);
  }
}

Rational GeneralTerm::value(long j) const {
  if (j < start) throw MalformedInput("index below series start");
  Rational t = constant * power.pow(j);
  for (const auto& f : factors) {
    Rational base = f.base0 + Rational(f.base1 * j);
    long m = f.idx0 + f.idx1 * j;
    if (f.exponent < 0)
      t *= reciprocal_pochhammer(base, m).pow(-f.exponent);
    else
      t *= pochhammer(base, m).pow(f.exponent);
  }
  return t * evaluate(rational, {{Var::j, Rational(j)}});
}

RatFun GeneralTerm::ratio() const {
  RatFun r(power);
  MultiPoly j = j_poly();
  for (const auto& f : factors) {
    if (f.base1 < 0 || f.idx1 < 0) throw UnsupportedSpec("negative j-slope in a Pochhammer factor");
    MultiPoly base = j * Rational(f.base1) + MultiPoly(f.base0);
    MultiPoly top = base + j * Rational(f.idx1) + MultiPoly(Rational(f.idx0));
    RatFun piece(rising(top, f.base1 + f.idx1), rising(base, f.base1));
    r *= piece.pow(f.exponent);
  }
  MultiPoly j1 = j + MultiPoly(Rational(1));
  return r * rational.substitute(Var::j, j1) / rational;
}

Rational GeneralTerm::limit_ratio() const {
  Rational z = power;
  for (const auto& f : factors)
    z *= (pow_self(f.base1 + f.idx1) / pow_self(f.base1)).pow(f.exponent);
  return z;
}

Rational r1(const AccelParams& p, long shift) {
  Rational n = p.n + Rational(shift);
  return checked("r1", p.to_string(), [&] {
    return -g_at_zero({p.a, p.b, n}) / p2_at(p.a, n);
  });
}

Rational r2(const AccelParams& p, long shift) {
  Rational n = p.n + Rational(shift);
  return checked("r2", p.to_string(), [&] { return -p1_at(p.a, n) / p2_at(p.a, n); });
}

Rational mathcal_R(const AccelParams& p, long j) {
  Assignment x = abn(p);
  x[Var::j] = Rational(j);
  return evaluate(mathcal_R_form(), x);
}

Rational mathcal_R_bracket(const AccelParams& p, long j) {
  Assignment x = abn(p);
  x[Var::j] = Rational(j);
  return mathcal_R_bracket_form().evaluate(x);
}

AcceleratedSeries accelerate_t1(const AccelParams& p) {
  AcceleratedSeries s;
  s.theorem = Theorem::t1;
  s.params = p;
  s.lhs_description = "sum_{k>=0} F(n,k) at " + p.to_string();
  GeneralTerm& t = s.term;
  t.constant = pochhammer(p.a, p.b).pow(4);
  t.power = kQuarter;
  t.start = 0;
  Rational c0 = p.n - Rational(2) * p.a;
  t.factors = {
      {c0 + Rational(2), 0, -1, 1, 5},
      {c0 + Rational(3, 2), 0, -1, 1, -1},
      {p.n - p.a + Rational(2), 0, -1, 1, -4},
      {p.n - p.a + Rational(1), 1, p.b, 0, -4},
  };
  t.rational = in_j(mathcal_R_form(), p);
  return s;
}

Rational iterate_t1(const AccelParams& p, long m) {
  if (m < -1) throw MalformedInput("iteration depth below -1");
  Rational sum(0), prod(1);
  for (long j = -1; j <= m; ++j) {
    if (j >= 0) prod *= r2(p, j);
    sum += prod * r1(p, j + 1);
  }
  return sum;
}

T2Pieces t2_pieces(const AccelParams& p, long j) {
  Assignment x = abn(p);
  x[Var::j] = Rational(j);
  T2Pieces out;
  out.q1 = q1_form().evaluate(x);
  out.q2 = q2_form().evaluate(x);
  out.s1 = evaluate(s1_form(), x);
  out.s2 = evaluate(s2_form(), x);
  return out;
}

AcceleratedSeries accelerate_t2(const AccelParams& p) {
  AcceleratedSeries s;
  s.theorem = Theorem::t2;
  s.params = p;
  s.lhs_description = "sum_{k>=0} F(n,k) at " + p.to_string();
  s.scale = evaluate(s1_form(), abn(p));
  GeneralTerm& t = s.term;
  t.power = kQuarter;
  t.start = -1;
  Rational c0 = p.n - Rational(2) * p.a;
  t.factors = {
      {c0 + Rational(2), 0, 0, 1, 5},
      {c0 + Rational(3, 2), 0, 0, 1, -1},
      {p.n - p.a + Rational(2), 0, 0, 1, -4},
      {p.a, 0, p.b + 1, 1, 4},
      {p.n - p.a + Rational(2), 1, p.b + 1, 1, -4},
  };
  RatFun q1(q1_form()), q2(q2_form());
  t.rational = in_j((q1 + s2_form()) / q2, p);
  return s;
}

Rational r3(const AccelParams& p) {
  return checked("r3", p.to_string(), [&] {
    Rational ratio = pochhammer(p.a, p.b) * reciprocal_pochhammer(p.n - p.a + Rational(1), p.b);
    return -(ratio.pow(4)) * (p.n + Rational(2 * p.b));
  });
}

Rational r4(const AccelParams& p) {
  AccelParams up{p.a, p.b, p.n + Rational(1)};
  return r1(p, 0) - r2(p, 0) * r3(up);
}

Rational iterate_t2(const AccelParams& p, long m) {
  if (m < -1) throw MalformedInput("iteration depth below -1");
  Rational sum(0), prod(1);
  for (long j = -1; j <= m; ++j) {
    if (j >= 0) prod *= r2(p, j);
    AccelParams diag{p.a, p.b + j + 1, p.n + Rational(j + 1)};
    sum += prod * r4(diag);
  }
  return sum;
}

Rational closed_form_partial(const AcceleratedSeries& s, long m) {
  // T1 closed-form term j' pairs with iterate index j' - 1; T2 shares j.
  long last = s.theorem == Theorem::t1 ? m + 1 : m;
  Rational sum(0);
  for (long j = s.term.start; j <= last; ++j) sum += s.term.value(j);
  return s.scale * sum;
}

namespace {

// Collapses either at the original index and then moves the parameters,
// or moves every factor first and collapses at the new index.
SeriesSpec collapse_and_shift(const AcceleratedSeries& s, long shift, bool collapse_first) {
  const GeneralTerm& t = s.term;
  Collapsed c;
  c.constant = t.constant;
  c.power = t.power;
  long pre = collapse_first ? 0 : shift;
  if (pre != 0) c.constant *= t.power.pow(-pre);
  for (const auto& f : t.factors) {
    PochFactor g = f;
    g.base0 = f.base0 - Rational(f.base1 * pre);
    g.idx0 = f.idx0 - f.idx1 * pre;
    collapse_into(g, c);
  }
  SeriesSpec spec;
  spec.prefactor = s.scale * c.constant;
  spec.ratio_z = c.power;
  spec.num_params = c.num;
  spec.den_params = c.den;
  MultiPoly kk = MultiPoly::variable(Var::k) - MultiPoly(Rational(pre));
  RatFun rk = normalize(t.rational.substitute(Var::j, kk));
  spec.factor_num = rk.num();
  spec.factor_den = rk.den();
  merge_integer_pairs(spec);
  absorb_linear_factors(spec);
  if (collapse_first) {
    shift_parameters(spec, shift);
    absorb_linear_factors(spec);
  }
  make_primitive_factors(spec);
  std::sort(spec.num_params.begin(), spec.num_params.end());
  std::sort(spec.den_params.begin(), spec.den_params.end());
  try {
    validate(spec);
  } catch (const MathError& e) {
    throw NotCollapsible(std::string("reindexed series is not well formed: ") + e.what());
  }
  return spec;
}

}  // namespace

namespace {

Reindexed reindex_with(const AcceleratedSeries& s, long shift, bool collapse_first) {
  const GeneralTerm& t = s.term;
  SeriesSpec spec = collapse_and_shift(s, shift, collapse_first);
  // value = scale * sum_{j >= start} term(j) = sum_{k >= 0} spec(k) + absorbed.
  long first = t.start + shift;  // k of the first original term
  Rational absorbed(0);
  try {
    for (long k = 0; k < first; ++k) absorbed -= term_value(spec, k);
    for (long j = t.start; j < -shift; ++j) absorbed += s.scale * t.value(j);
    for (long k = std::max(first, 0L); k < std::max(first, 0L) + 8; ++k)
      if (term_value(spec, k) != s.scale * t.value(k - shift))
        throw NotCollapsible("collapsed series disagrees with the generated term at k=" +
                             std::to_string(k));
  } catch (const PoleError& e) {
    throw NotCollapsible(std::string("pole while aligning the reindexed series: ") + e.what());
  }
  return {spec, absorbed};
}

}  // namespace

Reindexed reindex(const AcceleratedSeries& s, long shift) {
  try {
    return reindex_with(s, shift, true);
  } catch (const NotCollapsible&) {
    return reindex_with(s, shift, false);
  }
}

long default_shift(const AcceleratedSeries& s) {
  for (long shift = 16; shift >= -8; --shift) {
    try {
      reindex(s, shift);
      return shift;
    } catch (const NotCollapsible&) {
    }
  }
  throw NotCollapsible("no shift in [-8, 16] collapses the series at " + s.params.to_string());
}

bool rate_property(const AcceleratedSeries& s) {
  RatFun diff = normalize(s.term.ratio() - RatFun(s.term.limit_ratio()));
  if (diff.is_zero()) return true;
  return diff.num().degree(Var::j) < diff.den().degree(Var::j);
}

}  // namespace hyperaccel
