#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "hyperaccel/accel.hpp"
#include "hyperaccel/errors.hpp"
#include "hyperaccel/precision.hpp"

namespace hyperaccel::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_rational_flag(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(flag + ": expected a rational P/Q, got '" + text + "'");
  }
}

struct Options {
  std::string format = "text";
  std::string file;
  bool timing = false;

  // verify / verify-all
  std::string id;
  int digits = 0;
  long max_terms = 10000;
  unsigned jobs = 0;

  // accelerate
  int theorem = 1;
  std::string a, n;
  long b = 0;
  std::string emit = "report";
  std::optional<long> shift;

  // certify
  std::string mode = "symbolic";
  int points = 200;
  std::uint64_t seed = 0;
  int perturbations = 20;

  // partial-sums
  std::string check;
  long n_max = 200;
};

std::vector<CatalogEntry> catalog_from(const Options& o) {
  return o.file.empty() ? builtin_catalog() : load(o.file);
}

ReportFormat report_format(const Options& o) {
  return o.format == "csv" ? ReportFormat::csv : ReportFormat::text;
}

int cmd_catalog_list(const Options& o, std::ostream& out) {
  out << render_list(catalog_from(o), o.format == "csv" ? ListFormat::csv : ListFormat::text);
  return kExitPass;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  auto entries = catalog_from(o);
  const CatalogEntry* e = find_entry(entries, o.id);
  if (!e) throw UsageError("unknown catalog id '" + o.id + "'");
  EvalReport r = verify_entry(*e, o.digits, o.max_terms);
  out << render_reports({r}, report_format(o), o.timing);
  if (r.status == VerifyStatus::fail) {
    err << "verify " << r.entry_id << ": " << r.detail << "\n";
    if (!r.computed.is_zero())
      err << "  computed " << r.computed.to_string(o.digits + 5) << "\n  target   "
          << r.target.to_string(o.digits + 5) << "\n";
    return kExitFail;
  }
  return kExitPass;
}

int cmd_verify_all(const Options& o, std::ostream& out, std::ostream& err) {
  auto entries = catalog_from(o);
  std::vector<EvalReport> reports(entries.size());
  unsigned jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(1, entries.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < entries.size();) reports[i] = verify_entry(entries[i], o.digits, o.max_terms);
    });
  for (auto& th : pool) th.join();
  std::sort(reports.begin(), reports.end(),
            [](const EvalReport& x, const EvalReport& y) { return x.entry_id < y.entry_id; });
  out << render_reports(reports, report_format(o), o.timing);

  std::size_t passed = 0, skipped = 0;
  std::vector<std::string> allowed, failed;
  for (const auto& r : reports) {
    if (r.status == VerifyStatus::pass) ++passed;
    else if (r.status == VerifyStatus::skipped_rate_1) ++skipped;
    else if (allowed_failure(r)) allowed.push_back(r.entry_id);
    else failed.push_back(r.entry_id);
  }
  std::ostream& summary = o.format == "csv" ? err : out;
  summary << "summary: " << passed << " passed, " << failed.size() << " failed, " << allowed.size()
          << " noted discrepancies, " << skipped << " skipped (rate 1)\n";
  auto list = [&](const char* label, const std::vector<std::string>& ids) {
    if (ids.empty()) return;
    summary << label;
    for (const auto& id : ids) summary << " " << id;
    summary << "\n";
  };
  list("transcription-discrepancy:", allowed);
  list("failed:", failed);
  for (const auto& r : reports)
    if (r.status == VerifyStatus::fail && !allowed_failure(r)) err << "verify " << r.entry_id << ": " << r.detail << "\n";
  return failed.empty() ? kExitPass : kExitFail;
}

// Scale c with term(spec, k) = c * term(entry, k) for the first terms, if any.
std::optional<std::pair<const CatalogEntry*, Rational>> match_catalog(const SeriesSpec& spec,
                                                                       const std::vector<CatalogEntry>& entries) {
  for (const auto& e : entries) {
    Rational t0 = term_value(e.series, 0);
    if (t0.is_zero()) continue;
    Rational c = term_value(spec, 0) / t0;
    if (c.is_zero()) continue;
    bool same = true;
    for (long k = 1; k < 12 && same; ++k) same = term_value(spec, k) == c * term_value(e.series, k);
    if (same) return std::pair{&e, c};
  }
  return std::nullopt;
}

int cmd_accelerate(const Options& o, std::ostream& out, std::ostream& err) {
  const Rational a = parse_rational_flag("--a", o.a), n = parse_rational_flag("--n", o.n);
  AccelParams p;
  AcceleratedSeries s;
  try {
    p = AccelParams::make(a, o.b, n);
    if (o.theorem == 2) screen_t2(p);
    s = o.theorem == 1 ? accelerate_t1(p) : accelerate_t2(p);
  } catch (const MathError& e) {
    err << "accelerate " << "(a,b,n)=(" << a << "," << o.b << "," << n << "): " << e.what() << "\n";
    return kExitFail;
  }
  const long shift = o.shift ? *o.shift : default_shift(s);
  Reindexed r = reindex(s, shift);
  const auto catalog = builtin_catalog();
  auto match = match_catalog(r.spec, catalog);

  CatalogEntry rec;
  rec.id = "accel-t" + std::to_string(o.theorem) + "-a" + p.a.to_string() + "-b" + std::to_string(p.b) + "-n" +
           p.n.to_string();
  rec.series = r.spec;
  rec.expected_rate = asymptotic_rate(r.spec);
  rec.citation = "acceleration at " + p.to_string() + (o.theorem == 1 ? ", single sum" : ", double sum");
  std::ostringstream note;
  note << "sum_{k>=0} F(n,k) = series + " << r.absorbed << "; shift " << shift;
  if (match) {
    const auto& [entry, c] = *match;
    TargetConstant t = *entry->target;
    t.coefficient *= c;
    t.addend *= c;
    rec.target = t;
    rec.series.target = t;
    note << "; " << c << " times catalog entry " << entry->id;
  }
  rec.note = note.str();

  if (o.emit == "spec") {
    out << format_entries({rec});
    return kExitPass;
  }

  bool ok = true;
  out << "theorem " << o.theorem << " at " << p.to_string() << "\n";
  out << "lhs: " << s.lhs_description << "\n";
  bool duality = true;
  long first_bad = -2;
  for (long m = -1; m <= 15 && duality; ++m) {
    Rational it = o.theorem == 1 ? iterate_t1(p, m) : iterate_t2(p, m);
    duality = it == closed_form_partial(s, m);
    if (!duality) first_bad = m;
  }
  out << "recursion/closed-form duality for -1 <= m <= 15: " << (duality ? "exact" : "FAILED at m = " + std::to_string(first_bad)) << "\n";
  ok &= duality;
  bool rate = rate_property(s);
  out << "limit ratio " << s.term.limit_ratio() << ", rate property: " << (rate ? "holds" : "FAILS") << "\n";
  ok &= rate;
  out << "reindexed (shift " << shift << "), absorbed constant " << r.absorbed << ":\n";
  out << format_entries({rec});
  if (match) out << "matches catalog entry " << match->first->id << " scaled by " << match->second << "\n";

  const long bits = 4L * o.digits + 64;
  const long terms =
      static_cast<long>(std::ceil(o.digits / -std::log10(rec.expected_rate.abs().to_double()))) + 10;
  try {
    long t = terms;
    while (tail_bound(r.spec, r.spec.start + t) > Rational(1, 10).pow(o.digits + 2) && t < 100000) t += t / 4 + 1;
    HPFloat accelerated = sum_series(r.spec, t, bits) + HPFloat::from_rational(r.absorbed, bits);
    SeriesSpec direct_spec = shift_normalize(RawF{p.a, p.b, p.n});
    HPFloat direct(bits);
    long m = 64;
    for (; m <= 65536; m *= 2) {
      try {
        direct = sum_series(direct_spec, m, bits, Truncation::polynomial_decay);
      } catch (const CannotBound&) {
        continue;
      }
      if (direct.error_log10() <= -o.digits - 1) break;
    }
    int d = digits_agreement(accelerated, direct);
    out << "accelerated value " << accelerated.to_string(o.digits) << " (" << t << " terms)\n";
    out << "direct sum of F(n,k) " << direct.to_string(o.digits) << " (" << std::min(m, 65536L) << " terms + tail)\n";
    out << "agreement: " << d << " digits (requested " << o.digits << ")\n";
    if (d < o.digits) {
      ok = false;
      err << "accelerate " << p.to_string() << ": only " << d << " digits agree\n";
    }
  } catch (const MathError& e) {
    out << "numeric check unavailable: " << e.what() << "\n";
    ok = false;
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  CheckOptions opt;
  opt.mode = o.mode == "randomized" ? CheckMode::randomized : CheckMode::symbolic;
  opt.points = o.points;
  opt.seed = o.seed;
  const FFamily fam = standard_family();
  const Certificate cert = theorem1_certificate();
  auto t0 = std::chrono::steady_clock::now();
  CheckResult r = check_certificate(fam, cert, opt);
  out << "certificate (" << o.mode << (opt.mode == CheckMode::randomized ? ", " + std::to_string(o.points) + " points" : "")
      << "): " << (r.ok ? "pass" : "FAIL") << "\n";
  if (!r.ok) err << "certificate: " << r.detail << "\n";
  int rejected = 0;
  auto perturbed = perturbed_certificates(cert, o.perturbations);
  for (std::size_t i = 0; i < perturbed.size(); ++i) {
    CheckResult pr = check_certificate(fam, perturbed[i], opt);
    if (!pr.ok) ++rejected;
    else err << "perturbation " << i << " was not rejected\n";
  }
  out << "perturbations rejected: " << rejected << "/" << perturbed.size() << "\n";
  if (o.timing)
    out << "elapsed ms: "
        << std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() << "\n";
  return r.ok && rejected == static_cast<int>(perturbed.size()) ? kExitPass : kExitFail;
}

int cmd_partial_sums(const Options& o, std::ostream& out, std::ostream& err) {
  IdentityCheck r = o.check == "glaisher" ? check_glaisher_partial(o.n_max) : check_guillera_partial(o.n_max);
  if (r) {
    out << o.check << " partial-sum identity holds exactly for 0 <= n <= " << o.n_max << "\n";
    return kExitPass;
  }
  out << o.check << " partial-sum identity FAILS\n";
  err << o.check << ": first failure at n = " << r.first_failure << ": lhs " << r.lhs << ", rhs " << r.rhs << "\n";
  return kExitFail;
}

int cmd_identity8(const Options& o, std::ostream& out, std::ostream& err) {
  const Rational a = parse_rational_flag("--a", o.a);
  if (a <= Rational(0)) throw UsageError("--a must be positive");
  try {
    Identity8Result r = check_identity8(a, o.digits);
    out << "a = " << a << "\n";
    out << "left  " << r.left.to_string(o.digits + 2) << " (" << r.left_terms << " terms + asymptotic tail, error <= "
        << r.left.error_string() << ")\n";
    out << "right " << r.right.to_string(o.digits + 2) << " (" << r.right_terms << " terms, error <= "
        << r.right.error_string() << ")\n";
    out << "agreement: " << r.digits << " digits (requested " << o.digits << "): " << (r.ok ? "pass" : "FAIL") << "\n";
    if (!r.ok) err << "identity8 a=" << a << ": only " << r.digits << " digits agree\n";
    return r.ok ? kExitPass : kExitFail;
  } catch (const ConvergenceTooSlow& e) {
    err << "identity8 a=" << a << ": " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact and high-precision tools for accelerated hypergeometric series", "hyperaccel"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "csv"}));
  };
  auto add_file = [&](CLI::App* sub) {
    sub->add_option("--file", o.file, "Catalog file instead of the built-in catalog");
  };

  auto* catalog = app.add_subcommand("catalog", "Inspect the series catalog");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "List catalog entries");
  add_format(list);
  add_file(list);

  o.digits = 30;
  auto* verify = app.add_subcommand("verify", "Verify one catalog entry numerically");
  verify->add_option("--id", o.id, "Catalog id")->required();
  auto* verify_digits = verify->add_option("--digits", o.digits, "Requested digits")->check(CLI::Range(1, 5000));
  verify->add_option("--max-terms", o.max_terms, "Term budget")->check(CLI::Range(1L, 10000000L));
  verify->add_flag("--timing", o.timing, "Report elapsed milliseconds");
  add_format(verify);
  add_file(verify);

  auto* verify_all = app.add_subcommand("verify-all", "Verify every catalog entry");
  auto* verify_all_digits =
      verify_all->add_option("--digits", o.digits, "Requested digits")->check(CLI::Range(1, 5000));
  verify_all->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  verify_all->add_option("--max-terms", o.max_terms, "Term budget")->check(CLI::Range(1L, 10000000L));
  verify_all->add_flag("--timing", o.timing, "Report elapsed milliseconds");
  add_format(verify_all);
  add_file(verify_all);

  auto* accelerate = app.add_subcommand("accelerate", "Generate an accelerated series");
  accelerate->add_option("--theorem", o.theorem, "1: single sum, 2: double sum")->required()->check(CLI::IsMember({1, 2}));
  accelerate->add_option("--a", o.a, "a as P/Q")->required();
  accelerate->add_option("--b", o.b, "b (integer)")->required();
  accelerate->add_option("--n", o.n, "n as P/Q")->required();
  accelerate->add_option("--emit", o.emit, "spec: catalog record; report: checks")->check(CLI::IsMember({"spec", "report"}));
  auto* accelerate_digits = accelerate->add_option("--digits", o.digits, "Digits for the numeric check")->check(CLI::Range(1, 2000));
  accelerate->add_option("--shift", o.shift, "Index shift for the reindexed series");

  auto* certify = app.add_subcommand("certify", "Check the rational certificate");
  certify->add_option("--mode", o.mode, "symbolic or randomized")->check(CLI::IsMember({"symbolic", "randomized"}));
  certify->add_option("--points", o.points, "Random points")->check(CLI::Range(1, 1000000));
  certify->add_option("--seed", o.seed, "Random seed");
  certify->add_option("--perturbations", o.perturbations, "Perturbed certificates that must fail")->check(CLI::Range(0, 1000));
  certify->add_flag("--timing", o.timing, "Report elapsed milliseconds");

  auto* partial = app.add_subcommand("partial-sums", "Exact partial-sum identities");
  partial->add_option("--check", o.check, "glaisher or guillera")->required()->check(CLI::IsMember({"glaisher", "guillera"}));
  partial->add_option("--n-max", o.n_max, "Largest n")->check(CLI::Range(0L, 100000L));

  auto* identity8 = app.add_subcommand("identity8", "Compare both sides of the shifted Guillera identity");
  identity8->add_option("--a", o.a, "a as P/Q, a > 0")->required();
  auto* identity8_digits = identity8->add_option("--digits", o.digits, "Requested digits")->check(CLI::Range(1, 2000));

  try {
    app.parse(argc, argv);
    // per-command digit defaults
    if (verify_all->parsed() && verify_all_digits->count() == 0) o.digits = 25;
    if (identity8->parsed() && identity8_digits->count() == 0) o.digits = 25;
    (void)verify_digits;
    (void)accelerate_digits;
    if (accelerate->parsed()) {
      parse_rational_flag("--a", o.a);
      parse_rational_flag("--n", o.n);
    }
    if (identity8->parsed()) parse_rational_flag("--a", o.a);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (list->parsed()) return cmd_catalog_list(o, out);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (verify_all->parsed()) return cmd_verify_all(o, out, err);
    if (accelerate->parsed()) return cmd_accelerate(o, out, err);
    if (certify->parsed()) return cmd_certify(o, out, err);
    if (partial->parsed()) return cmd_partial_sums(o, out, err);
    if (identity8->parsed()) return cmd_identity8(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "catalog file: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "catalog file: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace hyperaccel::cli
