#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "hyperaccel/accel.hpp"
#include "hyperaccel/catalog.hpp"
#include "hyperaccel/errors.hpp"

using namespace hyperaccel;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

// Brute-force term: z^k * prod (u)_k / prod (v)_k * P(k) / Q(k), with every
// rising factorial expanded as a plain product.
Rational brute_term(const SeriesSpec& s, long k) {
  Rational t = s.prefactor;
  for (long i = 0; i < k; ++i) t *= s.ratio_z;
  for (const auto& u : s.num_params)
    for (long i = 0; i < k; ++i) t *= u + Rational(i);
  for (const auto& v : s.den_params)
    for (long i = 0; i < k; ++i) t /= v + Rational(i);
  auto horner = [k](const std::vector<Rational>& c) {
    Rational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * Rational(k) + *it;
    return acc;
  };
  t *= horner(s.factor_num.univariate_coefficients(Var::k));
  t /= horner(s.factor_den.univariate_coefficients(Var::k));
  return t;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hyperaccel_" + name);
}

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kRecord =
    "id = sample\n"
    "z = -1/4\n"
    "num = 1/2, 1/2, 1/2, 1/2, 1/2\n"
    "den = 1, 1, 1, 1, 1\n"
    "poly = 1, 8, 20\n"
    "target = 8 * 1/pi^2\n"
    "rate = -1/4\n"
    "cite = sample record\n";

}  // namespace

TEST_CASE("builtin catalog shape") {
  auto c = builtin_catalog();
  CHECK(c.size() >= 28);
  std::set<std::string> ids;
  for (const auto& e : c) {
    CHECK(ids.insert(e.id).second);
    CHECK_NOTHROW(validate_entry(e));
    CHECK(!e.citation.empty());
    CHECK(e.series.target == e.target);
  }
  for (const char* id : {"ramanujan-6k1", "ramanujan-20k3", "glaisher", "firstknown", "guillera-1024",
                         "guillera-m14", "guillera-2764", "cz128", "czcubic", "cl41", "au-427", "motivating",
                         "motivating2", "az-zeta3", "ex17", "ex145", "ex5", "ex49", "ex81", "cz-rational-factor"})
    CHECK_MESSAGE(find_entry(c, id) != nullptr, id);

  const auto* g = find_entry(c, "guillera-1024");
  REQUIRE(g);
  CHECK(g->series.ratio_z == q(-1, 1024));
  CHECK(g->series.num_params == std::vector<Rational>(5, q(1, 2)));
  CHECK(g->series.den_params == std::vector<Rational>(5, q(1)));
  CHECK(g->series.factor_num.univariate_coefficients(Var::k) == std::vector<Rational>{q(13), q(180), q(820)});
  CHECK(g->target->to_string() == "128 * 1/pi^2");

  const auto* gl = find_entry(c, "glaisher");
  REQUIRE(gl);
  CHECK(gl->expected_rate == q(1));
  CHECK(gl->target->to_string() == "8 * 1/pi^2");

  const auto* cz = find_entry(c, "cz7168");
  REQUIRE(cz);
  REQUIRE(cz->note);
  CHECK(cz->note->find("duplicate") != std::string::npos);
  int quartic = 0;
  for (const auto& e : c)
    if (e.series.factor_num.univariate_coefficients(Var::k).back() == q(7168)) ++quartic;
  CHECK(quartic == 1);
}

TEST_CASE("rational-factor entry") {
  auto c = builtin_catalog();
  const auto* e = find_entry(c, "cz-rational-factor");
  REQUIRE(e);
  // (2k-3)^4 (2k-1)^4 expanded independently.
  std::vector<Rational> lin1{q(-3), q(2)}, lin2{q(-1), q(2)}, prod{q(1)};
  auto mul = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  for (int i = 0; i < 4; ++i) prod = mul(mul(prod, lin1), lin2);
  CHECK(e->series.factor_den.univariate_coefficients(Var::k) == prod);
  CHECK(e->target->to_string() == "-64 * 1/pi^2");
  CHECK(e->note);
}

TEST_CASE("first terms agree with a brute-force evaluator") {
  for (const auto& e : builtin_catalog())
    for (long k = 0; k < 3; ++k) CHECK_MESSAGE(term_value(e.series, k) == brute_term(e.series, k), e.id);
}

TEST_CASE("term ratio matches consecutive terms") {
  for (const auto& e : builtin_catalog()) {
    RatFun r = term_ratio(e.series);
    long kmax = e.expected_rate == q(1) ? 60 : 200;
    Rational t = term_value(e.series, 0);
    for (long k = 0; k < kmax; ++k) {
      Rational next = term_value(e.series, k + 1);
      REQUIRE_MESSAGE(next == t * evaluate(r, {{Var::k, Rational(k)}}), e.id);
      t = next;
    }
  }
}

TEST_CASE("tail bounds hold on geometric entries") {
  for (const auto& e : builtin_catalog()) {
    if (e.expected_rate.abs() == q(1)) continue;
    for (long m : {10L, 50L}) {
      Rational bound = tail_bound(e.series, m);
      Rational tail(0);
      for (long k = m; k < m + 60; ++k) tail += term_value(e.series, k);
      CHECK_MESSAGE(tail.abs() <= bound, e.id);
    }
  }
}

TEST_CASE("round trip is byte identical") {
  auto c = builtin_catalog();
  auto p1 = temp_file("rt1.txt"), p2 = temp_file("rt2.txt");
  save(c, p1);
  auto loaded = load(p1);
  CHECK(loaded == c);
  save(loaded, p2);
  CHECK(read_all(p1) == read_all(p2));
  CHECK(format_entries(parse_entries(format_entries(c))) == format_entries(c));
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("format details") {
  auto e = parse_entries(kRecord);
  REQUIRE(e.size() == 1);
  CHECK(format_entries(e) == kRecord);
  CHECK(e[0].series.start == 0);
  CHECK(!e[0].note);

  std::string extra = std::string(kRecord) + "prefactor = 3/2\nnote = hello\n";
  auto e2 = parse_entries(extra);
  CHECK(e2[0].series.prefactor == q(3, 2));
  CHECK(e2[0].note == std::string("hello"));
}

TEST_CASE("records without a target") {
  std::string text = kRecord;
  text.erase(text.find("target = "), std::string("target = 8 * 1/pi^2\n").size());
  auto e = parse_entries(text);
  REQUIRE(e.size() == 1);
  CHECK(!e[0].target);
  CHECK(format_entries(e) == text);
  CHECK(render_list(e, ListFormat::csv) == "id,rate,target,cite,note\nsample,-1/4,,sample record,\n");
}

TEST_CASE("load errors") {
  std::string bad = kRecord;
  bad.replace(bad.find("den = 1, 1, 1, 1, 1"), 19, "den = 1, 1, 1, 1");
  try {
    parse_entries(std::string("\n") + bad);
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(std::string(err.what()).find("sample") != std::string::npos);
    CHECK(err.line() == 4);
  }

  CHECK_THROWS_AS(parse_entries(std::string(kRecord) + "\n" + kRecord), ValidationError);

  std::string wrong_rate = kRecord;
  wrong_rate.replace(wrong_rate.find("rate = -1/4"), 11, "rate = 1/4");
  CHECK_THROWS_AS(parse_entries(wrong_rate), ValidationError);

  CHECK_THROWS_AS(parse_entries("id = x\nbogus = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_entries("id = x\n"), ParseError);
  CHECK_THROWS_AS(parse_entries(std::string(kRecord) + "z = 1\n"), ParseError);
  CHECK_THROWS_AS(load(temp_file("does-not-exist.txt")), std::runtime_error);
}

TEST_CASE("listing") {
  auto c = builtin_catalog();
  std::string csv = render_list(c, ListFormat::csv);
  CHECK(csv.rfind("id,rate,target,cite,note\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(c.size()) + 1);
  std::string text = render_list(c, ListFormat::text);
  CHECK(text.find("guillera-1024") != std::string::npos);
  CHECK(text.find("-1/1024") != std::string::npos);
}

TEST_CASE("accelerated series reindex onto catalog entries") {
  auto c = builtin_catalog();
  struct Case {
    bool second;
    Rational a;
    long b;
    Rational n;
    const char* id;
  };
  const Rational h = q(1, 2);
  const std::vector<Case> cases = {
      {false, h, 0, q(3, 2), "guillera-m14"}, {false, h, 1, q(3, 2), "cz128"},
      {false, -h, 3, h, "cl41"},              {false, -h, 4, h, "ex17"},
      {false, -h, 5, h, "ex145"},             {false, -h, 0, q(7, 2), "motivating"},
      {false, -h, -1, q(5, 2), "ex5"},        {false, -h, -2, q(3, 2), "ex49"},
      {false, -h, -3, q(5, 2), "ex81"},       {true, h, 1, q(3, 2), "guillera-1024"},
      {true, h, 0, q(3, 2), "motivating2"},   {true, h, 0, q(5, 2), "cz13120a"},
      {true, h, 0, q(7, 2), "cz-rational-factor"}, {true, q(1), 0, q(2), "az-zeta3"},
      {true, q(1), 1, q(5, 2), "pi2-81-16"},
  };
  for (const auto& cs : cases) {
    auto p = AccelParams::make(cs.a, cs.b, cs.n);
    auto s = cs.second ? accelerate_t2(p) : accelerate_t1(p);
    const auto* e = find_entry(c, cs.id);
    REQUIRE(e);
    bool matched = false;
    for (long shift = -4; shift <= 6 && !matched; ++shift) {
      Reindexed r;
      try {
        r = reindex(s, shift);
      } catch (const MathError&) {
        continue;
      }
      Rational t0 = term_value(e->series, 0);
      Rational scale = term_value(r.spec, 0) / t0;
      matched = scale != q(0);
      for (long k = 0; k < 12 && matched; ++k)
        matched = term_value(r.spec, k) == scale * term_value(e->series, k);
    }
    CHECK_MESSAGE(matched, cs.id);
  }
}
