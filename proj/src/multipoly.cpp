#include "hyperaccel/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hyperaccel/errors.hpp"

namespace hyperaccel {

namespace {

unsigned degree_of(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0U);
}

std::size_t idx(Var v) { return static_cast<std::size_t>(v); }

Exponents add_exponents(const Exponents& x, const Exponents& y) {
  Exponents r{};
  for (std::size_t i = 0; i < kNumVars; ++i) r[i] = static_cast<std::uint16_t>(x[i] + y[i]);
  return r;
}

bool divides(const Exponents& x, const Exponents& y) {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (x[i] > y[i]) return false;
  return true;
}

}  // namespace

char var_name(Var v) {
  static constexpr char names[] = {'n', 'k', 'j', 'a', 'b'};
  return names[idx(v)];
}

Var parse_var(char c) {
  switch (c) {
    case 'n': return Var::n;
    case 'k': return Var::k;
    case 'j': return Var::j;
    case 'a': return Var::a;
    case 'b': return Var::b;
    default: throw MalformedInput(std::string("unknown symbol '") + c + "'");
  }
}

bool GrlexLess::operator()(const Exponents& x, const Exponents& y) const {
  unsigned dx = degree_of(x), dy = degree_of(y);
  if (dx != dy) return dx < dy;
  return x < y;
}

std::string to_string(const Assignment& x) {
  std::string s = "{";
  bool first = true;
  for (const auto& [v, q] : x) {
    if (!first) s += ", ";
    first = false;
    s += var_name(v);
    s += "=" + q.to_string();
  }
  return s + "}";
}

MultiPoly::MultiPoly(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

MultiPoly MultiPoly::variable(Var v) {
  Exponents e{};
  e[idx(v)] = 1;
  return monomial(e, Rational(1));
}

MultiPoly MultiPoly::monomial(const Exponents& e, const Rational& c) {
  MultiPoly p;
  if (!c.is_zero()) p.terms_.emplace(e, c);
  return p;
}

MultiPoly MultiPoly::univariate(Var v, std::span<const Rational> ascending) {
  MultiPoly p;
  for (std::size_t i = 0; i < ascending.size(); ++i) {
    Exponents e{};
    e[idx(v)] = static_cast<std::uint16_t>(i);
    p.add_term(e, ascending[i]);
  }
  return p;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Rational MultiPoly::constant_value() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool MultiPoly::uses(Var v) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first[idx(v)] > 0; });
}

unsigned MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : degree_of(terms_.rbegin()->first);
}

int MultiPoly::degree(Var v) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max<int>(d, e[idx(v)]);
  return d;
}

const Exponents& MultiPoly::leading_exponents() const {
  if (terms_.empty()) throw MalformedInput("leading term of zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& MultiPoly::leading_coefficient() const {
  if (terms_.empty()) throw MalformedInput("leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(Var v) const {
  int d = degree(v);
  std::vector<MultiPoly> out(d < 0 ? 0 : static_cast<std::size_t>(d) + 1);
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    rest[idx(v)] = 0;
    out[e[idx(v)]].terms_.emplace(rest, c);
  }
  return out;
}

std::vector<Rational> MultiPoly::univariate_coefficients(Var v) const {
  int d = degree(v);
  std::vector<Rational> out(d < 0 ? 0 : static_cast<std::size_t>(d) + 1);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < kNumVars; ++i)
      if (i != idx(v) && e[i] != 0)
        throw MalformedInput("polynomial is not univariate in " + std::string(1, var_name(v)) +
                             ": " + to_string());
    out[e[idx(v)]] = c;
  }
  return out;
}

Rational MultiPoly::evaluate(const Assignment& x) const {
  std::array<std::vector<Rational>, kNumVars> powers;
  Rational sum;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      auto it = x.find(static_cast<Var>(i));
      if (it == x.end())
        throw MalformedInput(std::string("symbol '") + var_name(static_cast<Var>(i)) +
                             "' is not assigned");
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Rational(1));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * it->second);
      term *= pw[e[i]];
    }
    sum += term;
  }
  return sum;
}

MultiPoly MultiPoly::partial_evaluate(const Assignment& x) const {
  std::array<std::vector<Rational>, kNumVars> powers;
  MultiPoly out;
  for (const auto& [e, c] : terms_) {
    Rational coeff = c;
    Exponents rest = e;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      auto it = x.find(static_cast<Var>(i));
      if (it == x.end()) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Rational(1));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * it->second);
      coeff *= pw[e[i]];
      rest[i] = 0;
    }
    out.add_term(rest, coeff);
  }
  return out;
}

MultiPoly MultiPoly::substitute(Var v, const MultiPoly& replacement) const {
  auto coeffs = coefficients_in(v);
  MultiPoly out;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) out = out * replacement + *it;
  return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result(Rational(1)), base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Rational c = ca * cb;
      out.add_term(add_exponents(ea, eb), c);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = degree_of(e) == 0;
    bool wrote = false;
    if (constant || mag != Rational(1)) {
      os << mag.to_string();
      wrote = true;
    }
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << var_name(static_cast<Var>(i));
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

MultiPoly primitive_integer(const MultiPoly& p, Rational* scale) {
  if (p.is_zero()) {
    if (scale) *scale = Rational(1);
    return p;
  }
  mpz_class den_lcm = 1, num_gcd = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get().get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get().get_num_mpz_t());
  }
  Rational s(den_lcm, num_gcd);
  if (p.leading_coefficient().sign() < 0) s = -s;
  if (scale) *scale = s;
  return p * s;
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw PoleError("polynomial division by zero");
  if (b.is_constant()) return a * b.constant_value().inverse();
  MultiPoly rem = a, quot;
  const Exponents& lb = b.leading_exponents();
  const Rational& cb = b.leading_coefficient();
  while (!rem.is_zero()) {
    const Exponents& lr = rem.leading_exponents();
    if (!divides(lb, lr)) throw MalformedInput("inexact polynomial division");
    Exponents q{};
    for (std::size_t i = 0; i < kNumVars; ++i) q[i] = static_cast<std::uint16_t>(lr[i] - lb[i]);
    MultiPoly t = MultiPoly::monomial(q, rem.leading_coefficient() / cb);
    quot += t;
    rem -= t * b;
  }
  return quot;
}

std::pair<MultiPoly, MultiPoly> divide_univariate(const MultiPoly& a, const MultiPoly& b, Var v) {
  auto bc = b.univariate_coefficients(v);
  if (bc.empty()) throw PoleError("polynomial division by zero");
  auto rc = a.univariate_coefficients(v);
  std::size_t db = bc.size() - 1;
  if (rc.size() < bc.size()) return {MultiPoly(), a};
  std::vector<Rational> qc(rc.size() - db);
  for (std::size_t i = rc.size(); i-- > db;) {
    Rational q = rc[i] / bc[db];
    qc[i - db] = q;
    if (q.is_zero()) continue;
    for (std::size_t t = 0; t <= db; ++t) rc[i - db + t] -= q * bc[t];
  }
  rc.resize(db);
  return {MultiPoly::univariate(v, qc), MultiPoly::univariate(v, rc)};
}

namespace {

MultiPoly content_in(const MultiPoly& p, Var v) {
  MultiPoly g;
  for (const auto& c : p.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return MultiPoly(Rational(1));
  }
  return g;
}

MultiPoly primitive_part_in(const MultiPoly& p, Var v) {
  return primitive_integer(divide_exact(p, content_in(p, v)));
}

MultiPoly times_var_power(const MultiPoly& p, Var v, unsigned e) {
  Exponents s{};
  s[idx(v)] = static_cast<std::uint16_t>(e);
  return p * MultiPoly::monomial(s, Rational(1));
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, Var v) {
  auto bc = b.coefficients_in(v);
  int db = static_cast<int>(bc.size()) - 1;
  const MultiPoly& lcb = bc.back();
  MultiPoly r = a;
  while (!r.is_zero() && r.degree(v) >= db) {
    int dr = r.degree(v);
    MultiPoly lcr = r.coefficients_in(v).back();
    r = lcb * r - times_var_power(lcr * b, v, static_cast<unsigned>(dr - db));
  }
  return r;
}

MultiPoly monomial_gcd(const MultiPoly& a, const MultiPoly& b) {
  Exponents m;
  m.fill(UINT16_MAX);
  for (const auto* p : {&a, &b})
    for (const auto& [e, c] : p->terms())
      for (std::size_t i = 0; i < kNumVars; ++i) m[i] = std::min(m[i], e[i]);
  return MultiPoly::monomial(m, Rational(1));
}

// Degree of gcd(a(v), b(v)) over Q after fixing every other variable.
int univariate_gcd_degree(std::vector<Rational> x, std::vector<Rational> y) {
  auto trim = [](std::vector<Rational>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
  };
  trim(x);
  trim(y);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    while (x.size() >= y.size() && !x.empty()) {
      Rational q = x.back() / y.back();
      std::size_t off = x.size() - y.size();
      for (std::size_t i = 0; i < y.size(); ++i) x[off + i] -= q * y[i];
      x.pop_back();
      trim(x);
    }
    std::swap(x, y);
  }
  return static_cast<int>(x.size()) - 1;
}

// Upper bound on deg_v gcd(a, b) from an evaluation at the other variables
// where neither leading coefficient in v vanishes; -1 if no such point was
// found among the attempts.
int gcd_degree_bound(const MultiPoly& a, const MultiPoly& b, Var v) {
  MultiPoly la = a.coefficients_in(v).back(), lb = b.coefficients_in(v).back();
  for (long attempt = 0; attempt < 8; ++attempt) {
    Assignment x;
    long seed = 7 + 13 * attempt;
    for (Var w : kAllVars) {
      if (w == v) continue;
      x[w] = Rational(seed);
      seed = (seed * 31 + 17) % 1009 - 500;
    }
    if (la.evaluate(x).is_zero() || lb.evaluate(x).is_zero()) continue;
    return univariate_gcd_degree(a.partial_evaluate(x).univariate_coefficients(v),
                                 b.partial_evaluate(x).univariate_coefficients(v));
  }
  return -1;
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return primitive_integer(b);
  if (b.is_zero()) return primitive_integer(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly(Rational(1));
  if (a.size() == 1 || b.size() == 1) return monomial_gcd(a, b);

  for (Var v : kAllVars) {
    bool ua = a.uses(v), ub = b.uses(v);
    if (ua && !ub) return gcd(content_in(a, v), b);
    if (ub && !ua) return gcd(a, content_in(b, v));
  }

  // A gcd free of v divides every coefficient in v.
  for (Var v : kAllVars) {
    if (a.uses(v) && gcd_degree_bound(a, b, v) == 0)
      return gcd(content_in(a, v), content_in(b, v));
  }
  for (const auto* d : {&a, &b}) {
    const MultiPoly& other = d == &a ? b : a;
    if (d->total_degree() > other.total_degree()) continue;
    try {
      divide_exact(other, *d);
      return primitive_integer(*d);
    } catch (const MalformedInput&) {
    }
  }

  Var main = Var::n;
  int best = -1;
  for (Var v : kAllVars) {
    if (!a.uses(v)) continue;
    int d = std::max(a.degree(v), b.degree(v));
    if (best < 0 || d < best) {
      best = d;
      main = v;
    }
  }

  MultiPoly ca = content_in(a, main), cb = content_in(b, main);
  MultiPoly g = gcd(ca, cb);
  MultiPoly x = primitive_integer(divide_exact(a, ca));
  MultiPoly y = primitive_integer(divide_exact(b, cb));
  if (x.degree(main) < y.degree(main)) std::swap(x, y);
  MultiPoly result;
  while (true) {
    MultiPoly r = pseudo_remainder(x, y, main);
    if (r.is_zero()) {
      result = y;
      break;
    }
    if (r.degree(main) == 0) {
      result = MultiPoly(Rational(1));
      break;
    }
    x = std::move(y);
    y = primitive_part_in(r, main);
  }
  if (!result.is_constant()) result = primitive_part_in(result, main);
  return primitive_integer(g * result);
}

}  // namespace hyperaccel
