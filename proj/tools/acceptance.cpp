// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cli.hpp"
#include "hyperaccel/accel.hpp"
#include "hyperaccel/errors.hpp"
#include "hyperaccel/precision.hpp"

using namespace hyperaccel;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

struct Outcome {
  bool ok = false;
  std::string detail;
};

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "hyperaccel");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  return code;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational rise(const Rational& x, long m) {
  Rational r(1);
  for (long i = 0; i < m; ++i) r *= x + Rational(i);
  return r;
}

const std::vector<AccelParams>& grid() {
  static const std::vector<AccelParams> g = [] {
    std::vector<AccelParams> v;
    for (auto [a, b, n] : std::vector<std::tuple<Rational, long, Rational>>{
             {q(1, 2), 0, q(3, 2)}, {q(1, 2), 1, q(3, 2)}, {q(-1, 2), 3, q(1, 2)}, {q(-1, 2), 4, q(1, 2)},
             {q(-1, 2), 0, q(7, 2)}, {q(-1, 2), -1, q(5, 2)}, {q(1), 0, q(2)}, {q(1), 1, q(5, 2)}})
      v.push_back(AccelParams::make(a, b, n));
    return v;
  }();
  return g;
}

// Some shift makes the reindexed series a constant multiple of the entry, termwise.
bool reindexes_to(const AcceleratedSeries& s, const CatalogEntry& e) {
  for (long shift = -4; shift <= 6; ++shift) {
    Reindexed r;
    try {
      r = reindex(s, shift);
    } catch (const MathError&) {
      continue;
    }
    Rational c = term_value(r.spec, 0) / term_value(e.series, 0);
    bool same = !c.is_zero();
    for (long k = 0; k <= 40 && same; ++k) same = term_value(r.spec, k) == c * term_value(e.series, k);
    if (same) return true;
  }
  return false;
}

Outcome certificate() {
  auto t0 = std::chrono::steady_clock::now();
  std::string sym, rnd;
  int a = run_cli({"certify", "--mode", "symbolic"}, &sym);
  int b = run_cli({"certify", "--mode", "randomized", "--points", "200"}, &rnd);
  double t = seconds_since(t0);
  bool ok = a == 0 && b == 0 && sym.find("rejected: 20/20") != std::string::npos &&
            rnd.find("rejected: 20/20") != std::string::npos && t < 10;
  return {ok, "symbolic exit " + std::to_string(a) + ", randomized exit " + std::to_string(b) +
                  ", 20/20 perturbations rejected in both modes, " + std::to_string(t) + " s"};
}

Outcome partial_sums() {
  auto t0 = std::chrono::steady_clock::now();
  bool g = static_cast<bool>(check_glaisher_partial(200)), h = static_cast<bool>(check_guillera_partial(200));
  double t = seconds_since(t0);
  return {g && h && t < 5, std::string("glaisher ") + (g ? "exact" : "fails") + ", guillera " + (h ? "exact" : "fails") +
                               " for n <= 200, " + std::to_string(t) + " s"};
}

Outcome duality() {
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& p : grid()) {
    screen_t2(p);
    auto s1 = accelerate_t1(p), s2 = accelerate_t2(p);
    for (long m = -1; m <= 15; ++m) {
      if (iterate_t1(p, m) != closed_form_partial(s1, m)) return {false, "T1 mismatch at " + p.to_string()};
      if (iterate_t2(p, m) != closed_form_partial(s2, m)) return {false, "T2 mismatch at " + p.to_string()};
    }
  }
  bool anchor = iterate_t1(grid()[0], -1) == q(29, 16);
  double t = seconds_since(t0);
  return {anchor && t < 10, "8 triples, -1 <= m <= 15, anchor 29/16 " + std::string(anchor ? "reproduced" : "wrong") +
                                ", " + std::to_string(t) + " s"};
}

Outcome sum_against(const char* id, long terms, long bits, int digits) {
  auto c = builtin_catalog();
  const CatalogEntry& e = *find_entry(c, id);
  HPFloat s = sum_series(e.series, terms, bits);
  HPFloat t = target_value(*e.target, bits);
  int d = digits_agreement(s, t);
  double err = s.error_log10();
  bool ok = d >= digits && err < -digits;
  return {ok, std::to_string(terms) + " terms at " + std::to_string(bits) + " bits: " + std::to_string(d) +
                  " digits, sum error bound 1e" + std::to_string(static_cast<int>(std::ceil(err)))};
}

Outcome generative() {
  const auto c = builtin_catalog();
  auto entry = [&](const char* id) -> const CatalogEntry& { return *find_entry(c, id); };
  AcceleratedSeries g = accelerate_t1(grid()[0]);
  for (long j = 0; j <= 50; ++j) {
    Rational want = q(1, 16) * q(-1, 4).pow(j) * (rise(q(3, 2), j) / rise(q(2), j)).pow(5) *
                    Rational(20 * j * j + 48 * j + 29);
    if (g.term.value(j) != want) return {false, "T1(1/2,0,3/2) term mismatch at j = " + std::to_string(j)};
  }
  std::vector<std::pair<std::string, bool>> checks = {
      {"T1(1/2,0,3/2) -> guillera-m14", reindexes_to(g, entry("guillera-m14"))},
      {"T1(1/2,1,3/2) -> cz128", reindexes_to(accelerate_t1(grid()[1]), entry("cz128"))},
      {"T2(1/2,1,3/2) -> guillera-1024", reindexes_to(accelerate_t2(grid()[1]), entry("guillera-1024"))},
      {"T2(1,0,2) -> az-zeta3", reindexes_to(accelerate_t2(grid()[6]), entry("az-zeta3"))},
  };
  std::string detail = "term formula exact for j <= 50";
  bool ok = true;
  for (const auto& [name, good] : checks) {
    detail += "; " + name + (good ? "" : " FAILED");
    ok &= good;
  }
  return {ok, detail};
}

Outcome catalog_verification() {
  std::string csv;
  int code = run_cli({"verify-all", "--digits", "25", "--format", "csv"}, &csv);
  const std::set<std::string> required = {"ramanujan-6k1", "ramanujan-20k3", "firstknown", "guillera-1024",
                                          "guillera-m14",  "guillera-2764",  "cz128",      "czcubic",
                                          "cl41",          "au-427",         "motivating", "motivating2",
                                          "az-zeta3",      "ex17",           "ex145",      "ex5",
                                          "ex49",          "ex81"};
  std::map<std::string, std::string> status;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    if (f.size() >= 5) status[f[0]] = f[4];
  }
  int passed = 0;
  std::string missing;
  for (const auto& id : required) {
    if (status[id] == "pass") ++passed;
    else missing += " " + id;
  }
  bool ok = code == 0 && missing.empty();
  return {ok, "verify-all exit " + std::to_string(code) + ", " + std::to_string(passed) + "/" +
                  std::to_string(required.size()) + " required ids pass" + (missing.empty() ? "" : ", failing:" + missing)};
}

Outcome identity8() {
  std::string detail;
  bool ok = true;
  for (auto [a, digits] : std::vector<std::pair<Rational, int>>{{q(1, 2), 25}, {q(3, 4), 25}, {q(1), 25}, {q(1, 4), 15}}) {
    auto r = check_identity8(a, digits);
    ok &= r.ok;
    detail += (detail.empty() ? "" : ", ") + std::string("a=") + a.to_string() + ": " + std::to_string(r.digits);
  }
  return {ok, detail + " digits"};
}

Outcome rate_property_all() {
  std::vector<AccelParams> params = grid();
  for (auto [a, b, n] : std::vector<std::tuple<Rational, long, Rational>>{
           {q(-1, 2), 5, q(1, 2)}, {q(-1, 2), -2, q(3, 2)}, {q(-1, 2), -3, q(5, 2)}, {q(1, 2), 0, q(5, 2)},
           {q(1, 2), 0, q(7, 2)}})
    params.push_back(AccelParams::make(a, b, n));
  int count = 0;
  for (const auto& p : params) {
    for (const auto& s : {accelerate_t1(p), accelerate_t2(p)}) {
      if (!rate_property(s)) return {false, "fails at " + p.to_string()};
      ++count;
    }
  }
  return {true, std::to_string(count) + " generated series"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"certificate", certificate},
      {"exact partial-sum identities", partial_sums},
      {"recursion/closed-form duality", duality},
      {"rate -1/4 series to 50 digits", [] { return sum_against("guillera-m14", 100, 256, 50); }},
      {"rate -1/1024 series to 100 digits", [] { return sum_against("guillera-1024", 40, 512, 100); }},
      {"generative reproduction", generative},
      {"catalog verification", catalog_verification},
      {"shifted Guillera identity", identity8},
      {"rate property", rate_property_all},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.ok ? 0 : 1;
    std::cout << "criterion " << i + 1 << " " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
