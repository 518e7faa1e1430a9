#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hyperaccel/hyperterm.hpp"

namespace hyperaccel {

// F(n,k) = [u,u,u,u / d,d,d,d]_{k+b} * L(n,k) with u = a, d = 1+n-a and
// L = n + 2k + 2b. The lower base d must advance by one when n does.
struct FFamily {
  MultiPoly num_base;
  MultiPoly den_base;
  int multiplicity = 4;
  MultiPoly linear_factor;
};

// The family used throughout: u = a, d = 1 + n - a, L = n + 2k + 2b.
FFamily standard_family();

// (sigma_n, sigma_k) = (F(n+1,k)/F(n,k), F(n,k+1)/F(n,k)).
std::pair<RatFun, RatFun> f_shift_ratios(const FFamily& fam);

// p1(n) F(n+1,k) + p2(n) F(n,k) = G(n,k+1) - G(n,k) with G = R F.
struct Certificate {
  RatFun R;
  MultiPoly p1;
  MultiPoly p2;
  int r = 1;
};

Certificate theorem1_certificate();

enum class CheckMode { symbolic, randomized };

struct CheckOptions {
  CheckMode mode = CheckMode::symbolic;
  int points = 200;
  std::uint64_t seed = 42;
};

struct CheckResult {
  bool ok = false;
  // Nonzero normal form (symbolic) or first failing point (randomized).
  std::string detail;
};

// Verifies p1 sigma_n + p2 = R(n,k+1) sigma_k - R(n,k).
CheckResult check_certificate(const FFamily& fam, const Certificate& cert,
                              const CheckOptions& options = {});

// Both sides of the divided relation at one point.
std::pair<Rational, Rational> certificate_sides(const FFamily& fam, const Certificate& cert,
                                                const Assignment& point);

// Copies of `cert` with one coefficient of p1, p2 or the numerator of R
// changed by +1, cycling deterministically through the three.
std::vector<Certificate> perturbed_certificates(const Certificate& cert, int count);

// R(n,k) evaluated at a concrete (a,b,n).
Rational certificate_R(const Certificate& cert, const RawF& raw, long k);

// G(n,0) = R(n,0) F(n,0).
Rational g_at_zero(const RawF& raw);

// Summability of F(n,.): a < (2n+1)/4.
bool tail_condition(const Rational& a, const Rational& n);

}  // namespace hyperaccel
