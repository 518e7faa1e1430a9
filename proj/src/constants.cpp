// Truncation lemma used by both constants: if c_1 >= c_2 >= ... >= 0 and
// c_k -> 0, then |sum_{k>=1} (-1)^(k-1) c_k - sum_{k=1}^{N} (-1)^(k-1) c_k|
// <= c_{N+1}. Partial sums are exact rationals; the only other error is the
// final rounding to the working precision.
//
// atan(1/x) = sum_{i>=0} (-1)^i / ((2i+1) x^(2i+1)) has decreasing terms for
// x >= 1. For zeta(3), c_k = 1/(k^3 binom(2k,k)) decreases since
// c_{k+1}/c_k = k^3 / ((k+1)^2 (2k+1) 2) < 1.

#include "hyperaccel/constants.hpp"

#include "hyperaccel/errors.hpp"

namespace hyperaccel {

namespace {

// Exact partial sum of atan(1/x) over terms whose first omitted term is
// <= `tol`, together with that omitted term.
std::pair<mpq_class, mpq_class> atan_inv(long x, const mpq_class& tol) {
  mpq_class sum = 0;
  mpz_class pow = x;  // x^(2i+1)
  const mpz_class x2 = mpz_class(x) * x;
  for (long i = 0;; ++i) {
    mpq_class term(mpz_class(1), pow * (2 * i + 1));
    term.canonicalize();
    if (term <= tol) return {sum, term};
    if (i % 2 == 0) sum += term;
    else sum -= term;
    pow *= x2;
  }
}

HPFloat finish(const mpq_class& partial, const mpq_class& truncation, long bits) {
  HPFloat r = HPFloat::from_rational(Rational(partial), bits);
  r.add_error(Rational(truncation));
  return r;
}

void require_bits(long bits) {
  if (bits < 64) throw MalformedInput("reference constants need at least 64 bits");
}

}  // namespace

HPFloat ref_pi(long precision_bits) {
  require_bits(precision_bits);
  mpq_class tol(mpz_class(1), mpz_class(1) << (precision_bits + 8));
  auto [a5, r5] = atan_inv(5, tol);
  auto [a239, r239] = atan_inv(239, tol);
  mpq_class partial = 16 * a5 - 4 * a239;
  mpq_class truncation = 16 * r5 + 4 * r239;
  return finish(partial, truncation, precision_bits);
}

HPFloat ref_zeta3(long precision_bits) {
  require_bits(precision_bits);
  mpq_class tol(mpz_class(1), mpz_class(1) << (precision_bits + 8));
  mpq_class sum = 0;
  mpz_class binom = 2;  // binom(2k, k) at k = 1
  for (long k = 1;; ++k) {
    mpz_class k3 = mpz_class(k) * k * k;
    mpq_class c(mpz_class(1), k3 * binom);
    c.canonicalize();
    mpq_class scaled = c * mpq_class(5, 2);
    if (scaled <= tol) return finish(sum, scaled, precision_bits);
    if (k % 2 == 1) sum += scaled;
    else sum -= scaled;
    // binom(2k+2, k+1) = binom(2k, k) (2k+1)(2k+2) / (k+1)^2
    binom = binom * (2 * k + 1) * (2 * k + 2) / ((k + 1) * (k + 1));
  }
}

}  // namespace hyperaccel
