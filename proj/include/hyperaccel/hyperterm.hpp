#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperaccel/ratfun.hpp"

namespace hyperaccel {

// Rising factorial with the reciprocal extension to negative indices:
// (x)_m = x (x+1) ... (x+m-1) for m >= 0, 1 / ((x-1)(x-2)...(x+m)) for m < 0.
Rational pochhammer(const Rational& base, long m);

// 1/(x)_m, finite for every m < 0; throws PoleError when m >= 0 and (x)_m = 0.
Rational reciprocal_pochhammer(const Rational& base, long m);

enum class ConstantBase { one, inv_pi, inv_pi2, pi2, zeta3 };

// coefficient * base + addend
struct TargetConstant {
  Rational coefficient{1};
  ConstantBase base = ConstantBase::one;
  Rational addend{0};

  // "<rational> * <base> [+ <rational>]" with base in {1, 1/pi, 1/pi^2, pi^2, zeta3}.
  std::string to_string() const;
  static TargetConstant parse(std::string_view text);
  friend bool operator==(const TargetConstant&, const TargetConstant&) = default;
};

// T(k) = prefactor * z^k * prod (u_i)_k / prod (v_i)_k * P(k) / Q(k), k >= start.
struct SeriesSpec {
  Rational prefactor{1};
  Rational ratio_z{1};
  std::vector<Rational> num_params;
  std::vector<Rational> den_params;
  MultiPoly factor_num{Rational(1)};
  MultiPoly factor_den{Rational(1)};
  long start = 0;
  std::optional<TargetConstant> target;

  friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

// Throws UnsupportedSpec for unbalanced parameter lists and MalformedInput
// for factors that are not univariate in k, zero factors, or poles in the
// summation range.
void validate(const SeriesSpec& spec);

Rational term_value(const SeriesSpec& spec, long k);

// T(k+1)/T(k) as a canonical rational function of k.
RatFun term_ratio(const SeriesSpec& spec);

// The signed limit of T(k+1)/T(k); requires balanced parameter lists.
Rational asymptotic_rate(const SeriesSpec& spec);

// F(n,k) = [a,a,a,a / (1+n-a)^4]_{k+b} (n + 2k + 2b), before shifting.
struct RawF {
  Rational a;
  long b = 0;
  Rational n;
};

// Direct evaluation of F(n,k) from its definition.
Rational raw_f_value(const RawF& raw, long k);

// Rewrites F(n,.) as a standard series via (x)_{k+b} = (x)_b (x+b)_k.
SeriesSpec shift_normalize(const RawF& raw);

// Supremum of |T(k+1)/T(k)| over k >= M together with the witness index
// from which the ratio is provably monotone.
struct RatioBound {
  Rational rho;
  long monotone_from = 0;
};
RatioBound ratio_supremum(const SeriesSpec& spec, long m);

// B >= |sum_{k >= M} T(k)|, with B = |T(M)| / (1 - rho) where rho bounds the
// term ratio on [M, inf). Throws CannotBound when rho >= 1 or no
// monotonicity witness is found.
Rational tail_bound(const SeriesSpec& spec, long m);

// Polynomial positivity test on [x0, inf): true if every coefficient of
// p(x0 + t) is >= 0 (sufficient, not necessary).
bool nonnegative_from(const std::vector<Rational>& ascending, const Rational& x0);

}  // namespace hyperaccel
