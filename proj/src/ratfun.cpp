#include "hyperaccel/ratfun.hpp"

#include "hyperaccel/errors.hpp"

namespace hyperaccel {

// Canonical scaling of a coprime pair.
RatFun make_canonical(MultiPoly num, MultiPoly den);

namespace {

RatFun canonical(MultiPoly num, MultiPoly den) { return make_canonical(std::move(num), std::move(den)); }

const RatFun& ensure_canonical(const RatFun& f, RatFun& storage) {
  if (f.is_canonical()) return f;
  storage = normalize(f);
  return storage;
}

}  // namespace

RatFun::RatFun(const MultiPoly& num) : num_(num), den_(Rational(1)) {}

RatFun::RatFun(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw MalformedInput("rational function with zero denominator");
}

int RatFun::degree_gap(Var v) const {
  if (is_zero()) throw MalformedInput("degree gap of zero function");
  return num_.degree(v) - den_.degree(v);
}

RatFun RatFun::substitute(Var v, const MultiPoly& replacement) const {
  MultiPoly d = den_.substitute(v, replacement);
  if (d.is_zero()) throw PoleError("substitution makes the denominator vanish");
  return normalize(RatFun(num_.substitute(v, replacement), d));
}

RatFun RatFun::partial_evaluate(const Assignment& x) const {
  MultiPoly d = den_.partial_evaluate(x);
  if (d.is_zero()) throw PoleError("denominator vanishes at " + hyperaccel::to_string(x));
  return normalize(RatFun(num_.partial_evaluate(x), d));
}

RatFun RatFun::pow(int e) const {
  if (e < 0) return (RatFun(Rational(1)) / *this).pow(-e);
  RatFun tmp;
  const RatFun& f = ensure_canonical(*this, tmp);
  return canonical(f.num_.pow(static_cast<unsigned>(e)), f.den_.pow(static_cast<unsigned>(e)));
}

RatFun RatFun::operator-() const {
  RatFun out(-num_, den_);
  out.canonical_ = canonical_;
  return out;
}

RatFun operator+(const RatFun& f0, const RatFun& g0) {
  RatFun fs, gs;
  const RatFun& f = ensure_canonical(f0, fs);
  const RatFun& g = ensure_canonical(g0, gs);
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.den_ == g.den_) return normalize(RatFun(f.num_ + g.num_, f.den_));
  MultiPoly d = gcd(f.den_, g.den_);
  MultiPoly fd = divide_exact(f.den_, d), gd = divide_exact(g.den_, d);
  MultiPoly num = f.num_ * gd + g.num_ * fd;
  if (num.is_zero()) return RatFun();
  // Only factors of d can cancel against the new numerator.
  MultiPoly h = gcd(num, d);
  return canonical(divide_exact(num, h), fd * divide_exact(g.den_, h));
}

RatFun operator-(const RatFun& f, const RatFun& g) { return f + (-g); }

RatFun operator*(const RatFun& f0, const RatFun& g0) {
  RatFun fs, gs;
  const RatFun& f = ensure_canonical(f0, fs);
  const RatFun& g = ensure_canonical(g0, gs);
  if (f.is_zero() || g.is_zero()) return RatFun();
  MultiPoly g1 = gcd(f.num_, g.den_), g2 = gcd(g.num_, f.den_);
  return canonical(divide_exact(f.num_, g1) * divide_exact(g.num_, g2),
                   divide_exact(f.den_, g2) * divide_exact(g.den_, g1));
}

RatFun operator/(const RatFun& f, const RatFun& g0) {
  if (g0.is_zero()) throw PoleError("division by the zero rational function");
  RatFun gs;
  const RatFun& g = ensure_canonical(g0, gs);
  return f * canonical(g.den_, g.num_);
}

std::string RatFun::to_string() const {
  if (den_.is_constant() && den_.constant_value() == Rational(1)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << f.to_string(); }

RatFun make_canonical(MultiPoly num, MultiPoly den) {
  if (num.is_zero()) return RatFun();
  // Joint integer content over both parts, sign fixed by den.
  mpz_class den_lcm = 1, num_gcd = 0;
  for (const auto* p : {&num, &den}) {
    for (const auto& [e, c] : p->terms()) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get().get_den_mpz_t());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get().get_num_mpz_t());
    }
  }
  Rational s(den_lcm, num_gcd);
  if (den.leading_coefficient().sign() < 0) s = -s;
  RatFun out(num * s, den * s);
  out.canonical_ = true;
  return out;
}

RatFun normalize(const RatFun& f) {
  if (f.is_zero()) return RatFun();
  if (f.is_canonical()) return f;
  if (f.den().is_constant()) return canonical(f.num(), f.den());
  MultiPoly g = gcd(f.num(), f.den());
  return canonical(divide_exact(f.num(), g), divide_exact(f.den(), g));
}

Rational evaluate(const RatFun& f, const Assignment& x) {
  Rational d = f.den().evaluate(x);
  if (d.is_zero()) throw PoleError("pole of " + f.to_string() + " at " + to_string(x));
  return f.num().evaluate(x) / d;
}

bool equivalent(const RatFun& f, const RatFun& g) { return (f - g).is_zero(); }

}  // namespace hyperaccel
