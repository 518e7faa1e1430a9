#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperaccel/catalog.hpp"
#include "hyperaccel/constants.hpp"
#include "hyperaccel/hpfloat.hpp"

namespace hyperaccel {

enum class Truncation {
  geometric,         // tail from tail_bound
  polynomial_decay,  // rate-1 terms ~ C k^(-s), s > 1
};

// Sum of T(k) for start <= k < start + terms. abs_error covers rounding and
// the discarded tail. In polynomial_decay mode the tail is replaced by an
// asymptotic estimate t(M) rho(M) and abs_error bounds what that misses.
HPFloat sum_series(const SeriesSpec& spec, long terms, long precision_bits,
                   Truncation mode = Truncation::geometric);

// Asymptotic tail data for a rate-1 series at index m: sum_{k>=m} T(k) lies
// within T(m) * residual of T(m) * rho.
struct DecayTail {
  Rational s;         // T(k) ~ C k^(-s)
  Rational rho;       // rho(m)
  Rational residual;  // bound on |sum_{k>=m} T(k) - T(m) rho(m)| / |T(m)|
  int order = 0;      // number of correction terms used
};
DecayTail decay_tail(const SeriesSpec& spec, long m);

// Largest d with |x - y| <= 10^(-d) max(1, |y|), capped by what the two error
// bounds and precisions support. Never negative.
int digits_agreement(const HPFloat& x, const HPFloat& y);

HPFloat target_value(const TargetConstant& t, long precision_bits);

enum class VerifyStatus { pass, fail, skipped_rate_1 };

struct EvalReport {
  std::string entry_id;
  Rational rate;
  long terms_used = 0;
  long precision_bits = 0;
  HPFloat computed;
  HPFloat target;
  HPFloat abs_diff;
  int digits_agreement = 0;
  int requested_digits = 0;
  bool pass = false;
  VerifyStatus status = VerifyStatus::fail;
  double elapsed_ms = 0;
  std::string detail;
  std::optional<std::string> note;
};

// terms starts at ceil(min_digits / -log10|rate|) + 10 and grows by 25%
// until tail_bound < 10^-(min_digits+2), capped by max_terms;
// precision = 4 min_digits + 64 bits.
EvalReport verify_entry(const CatalogEntry& entry, int min_digits, long max_terms = 10000);

std::string_view status_name(VerifyStatus s);

// A failing report on an entry noted as a transcription discrepancy.
bool allowed_failure(const EvalReport& r);

enum class ReportFormat { text, csv };
// Columns: id, rate, terms, digits, pass, ms. Without `timing` the ms column
// prints "-" so output is reproducible.
std::string render_reports(const std::vector<EvalReport>& reports, ReportFormat format, bool timing);

struct IdentityCheck {
  bool ok = true;
  long first_failure = -1;
  Rational lhs, rhs;  // at the first failure
  explicit operator bool() const { return ok; }
};

// sum_{k=0}^{n} (-1/2)_k^4/(1)_k^4 (1-4k) = (n+1)^4 (8n^2+4n+1) (1/2)_n^4 / ((n+1)!)^4
IdentityCheck check_glaisher_partial(long n_max);

// sum_{k=0}^{n} (1/2)_k^4/(2)_k^4 (4k+3) = 16 - (3/2)_n^4/(2)_n^4 (8n^2+20n+13)
IdentityCheck check_guillera_partial(long n_max);

struct Identity8Result {
  bool ok = false;
  int digits = 0;
  HPFloat left, right;
  long left_terms = 0, right_terms = 0;
  explicit operator bool() const { return ok; }
};

// Left side 8a sum (1/2)_k^4/(a+1)_k^4 (4k+2a+1), right side
// sum (-1/4)^k (a+1/2)_k^5/(a+1)_k^5 (20(k+a)^2 + 8(k+a) + 1).
SeriesSpec identity8_left(const Rational& a);
SeriesSpec identity8_right(const Rational& a);
// Throws ConvergenceTooSlow when the left side cannot reach min_digits
// within `term_budget` terms.
Identity8Result check_identity8(const Rational& a, int min_digits, long term_budget = 65536);

}  // namespace hyperaccel
