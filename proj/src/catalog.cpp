#include "hyperaccel/catalog.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hyperaccel/errors.hpp"

namespace hyperaccel {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(trim(item)));
  return out;
}

std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s;
}

std::vector<Rational> ascending(const MultiPoly& p) { return p.univariate_coefficients(Var::k); }

MultiPoly poly_of(const std::vector<Rational>& c) { return MultiPoly::univariate(Var::k, c); }

std::vector<Rational> repeat(long count, Rational v) {
  return std::vector<Rational>(static_cast<std::size_t>(count), v);
}

std::vector<Rational> concat(std::vector<Rational> a, const std::vector<Rational>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Rational> ints(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

CatalogEntry make(std::string id, Rational z, std::vector<Rational> num, std::vector<Rational> den,
                  std::vector<Rational> poly, const char* target, std::string cite,
                  std::optional<std::string> note = std::nullopt,
                  std::vector<Rational> factor_den = {}) {
  CatalogEntry e;
  e.id = std::move(id);
  e.series.ratio_z = z;
  e.series.num_params = std::move(num);
  e.series.den_params = std::move(den);
  e.series.factor_num = poly_of(poly);
  if (!factor_den.empty()) e.series.factor_den = poly_of(factor_den);
  e.target = TargetConstant::parse(target);
  e.series.target = e.target;
  e.expected_rate = z;
  e.citation = std::move(cite);
  e.note = std::move(note);
  return e;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<CatalogEntry> builtin_catalog() {
  const Rational h(1, 2), q1(1, 4), q3(3, 4);
  const Rational m4(-1, 4), m1024(-1, 1024);
  const auto half5 = repeat(5, h), one5 = repeat(5, Rational(1));
  const char* jk = "display indexes the polynomial by j; read as k";
  std::vector<CatalogEntry> c;
  c.push_back(make("ramanujan-6k1", q1, repeat(3, h), repeat(3, Rational(1)), ints({1, 6}),
                   "4 * 1/pi", "Ramanujan; factor 6k+1"));
  c.push_back(make("ramanujan-20k3", m4, {q1, h, q3}, repeat(3, Rational(1)), ints({3, 20}),
                   "8 * 1/pi", "Ramanujan; factor 20k+3"));
  c.push_back(make("glaisher", Rational(1), repeat(4, -h), repeat(4, Rational(1)), ints({1, -4}),
                   "8 * 1/pi^2", "Glaisher; factor 1-4k, rate 1"));
  c.push_back(make("firstknown", Rational(1, 16), {q1, h, h, h, q3}, one5, ints({3, 34, 120}),
                   "32 * 1/pi^2", "Guillera; factor 120k^2+34k+3"));
  c.push_back(make("guillera-1024", m1024, half5, one5, ints({13, 180, 820}), "128 * 1/pi^2",
                   "Guillera; factor 820k^2+180k+13"));
  c.push_back(make("guillera-m14", m4, half5, one5, ints({1, 8, 20}), "8 * 1/pi^2",
                   "Guillera; factor 20k^2+8k+1"));
  c.push_back(make("guillera-2764", Rational(27, 64), {Rational(1, 3), h, h, h, Rational(2, 3)}, one5,
                   ints({3, 27, 74}), "48 * 1/pi^2", "Guillera; factor 74k^2+27k+3"));
  c.push_back(make("cz128", m4, half5, ints({1, 2, 2, 2, 2}), ints({13, 32, 20}), "128 * 1/pi^2",
                   "Chu and Zhang; factor 20k^2+32k+13"));
  c.push_back(make("czcubic", m4, {h, h, h, Rational(3, 2), Rational(3, 2)}, ints({1, 2, 2, 2, 2}),
                   ints({27, 94, 108, 40}), "256 * 1/pi^2",
                   "Chu and Zhang; factor 40k^3+108k^2+94k+27"));
  c.push_back(make("cz118", Rational(1, 16), {-q1, q1, h, h, h}, ints({1, 1, 1, 2, 2}),
                   ints({13, 118, 120}), "128 * 1/pi^2", "Chu and Zhang; factor 120k^2+118k+13"));
  c.push_back(make("cz7168", Rational(-1, 27), concat(concat(repeat(3, q1), {h}), repeat(3, q3)),
                   concat(one5, {Rational(4, 3), Rational(5, 3)}), ints({27, 492, 3376, 8832, 7168}),
                   "256 * 1/pi^2", "Chu and Zhang; factor 7168k^4+8832k^3+3376k^2+492k+27",
                   "duplicate: the survey displays this quartic series twice; stored once"));
  c.push_back(make("cz2048", m1024, {-h, h, h, Rational(3, 2), Rational(3, 2)}, ints({1, 1, 1, 2, 2}),
                   ints({207, 2046, 3476, 1640}), "2048 * 1/pi^2",
                   "Chu and Zhang; factor 1640k^3+3476k^2+2046k+207"));
  c.push_back(make("cz131072", m1024, {-h, h, h, Rational(5, 2), Rational(5, 2)},
                   ints({1, 2, 2, 2, 2}), ints({1475, 4614, 4788, 1640}), "131072/9 * 1/pi^2",
                   "Chu and Zhang; factor 1640k^3+4788k^2+4614k+1475"));
  c.push_back(make("chu16a", Rational(1, 16), {-h, q1, h, q3, Rational(3, 2)}, ints({1, 1, 1, 2, 2}),
                   ints({9, 80, 148, 80}), "256/3 * 1/pi^2", "Chu; factor 80k^3+148k^2+80k+9"));
  c.push_back(make("chu16b", Rational(1, 16), {h, h, q3, Rational(5, 4), Rational(3, 2)},
                   ints({1, 1, 1, 2, 2}), ints({45, 336, 532, 240}), "512 * 1/pi^2",
                   "Chu; factor 240k^3+532k^2+336k+45"));
  c.push_back(make("cl41", m4, half5, ints({1, 3, 3, 3, 3}), ints({41, 56, 20}), "32768/81 * 1/pi^2",
                   "survey series; factor 20k^2+56k+41"));
  c.push_back(make("au-427", Rational(4, 27), repeat(7, h),
                   concat({Rational(7, 6), Rational(5, 6)}, one5), ints({1, 12, 54, 92}),
                   "12 * 1/pi^2", "Au; factor 92k^3+54k^2+12k+1"));
  c.push_back(make("ex17", m4, half5, ints({1, 4, 4, 4, 4}), ints({17, 16, 4}), "524288/3125 * 1/pi^2",
                   "acceleration at (a,b,n)=(-1/2,4,1/2); factor 4k^2+16k+17"));
  c.push_back(make("ex145", m4, half5, ints({1, 5, 5, 5, 5}), ints({145, 104, 20}),
                   "2147483648/1500625 * 1/pi^2",
                   "acceleration at (a,b,n)=(-1/2,5,1/2); factor 20k^2+104k+145"));
  c.push_back(make("motivating", m4, repeat(5, Rational(3, 2)), ints({1, 1, 1, 1, 2}),
                   ints({9, 24, 20}), "-64 * 1/pi^2",
                   "acceleration at (a,b,n)=(-1/2,0,7/2); factor 20k^2+24k+9"));
  c.push_back(make("ex5", m4, repeat(5, Rational(5, 2)), ints({1, 1, 1, 1, 3}), ints({5, 8, 4}),
                   "1024/15 * 1/pi^2", "acceleration at (a,b,n)=(-1/2,-1,5/2); factor 4k^2+8k+5"));
  c.push_back(make("ex49", m4, repeat(5, Rational(7, 2)), ints({1, 1, 1, 1, 4}), ints({49, 56, 20}),
                   "-8192/5 * 1/pi^2", "acceleration; factor 20k^2+56k+49",
                   "generated by (a,b,n)=(-1/2,-2,3/2); the stated (-1/2,-3,3/2) gives the "
                   "20k^2+72k+81 series"));
  c.push_back(make("ex81", m4, repeat(5, Rational(9, 2)), ints({1, 1, 1, 1, 5}), ints({81, 72, 20}),
                   "262144/35 * 1/pi^2", "acceleration at (a,b,n)=(-1/2,-3,5/2); factor 20k^2+72k+81"));
  c.push_back(make("motivating2", m1024, {-h, -h, -h, h, h}, one5, ints({-1, -6, 8, 176, -528, 6560}),
                   "-8 * 1/pi^2",
                   "double acceleration at (a,b,n)=(1/2,0,3/2); factor 6560k^5-528k^4+176k^3+8k^2-6k-1"));
  c.push_back(make("cz13120a", m1024, concat(repeat(4, -h), {Rational(3, 2)}), ints({1, 1, 1, 1, 2}),
                   ints({-99, -540, 2956, 17888, 36144, 34368, 13120}), "-1024 * 1/pi^2",
                   "double acceleration at (a,b,n)=(1/2,0,5/2); factor 13120j^6+34368j^5+...", jk));
  c.push_back(make("cz-rational-factor", m1024, repeat(5, Rational(3, 2)), ints({1, 1, 1, 1, 2}),
                   ints({729, 972, -1620, -4320, -2320, -2368, 13120}), "-64 * 1/pi^2",
                   "double acceleration at (a,b,n)=(1/2,0,7/2); factor 13120j^6-2368j^5+... over "
                   "(2j-3)^4(2j-1)^4",
                   jk, ints({81, -864, 3888, -9600, 14176, -12800, 6912, -2048, 256})));
  c.push_back(make("az-zeta3", m1024, one5, repeat(5, Rational(3, 2)), ints({77, 250, 205}),
                   "64 * zeta3", "Amdeberhan and Zeilberger; factor 205k^2+250k+77"));
  c.push_back(make("pi2-81-16", m1024, concat(half5, ints({1, 1, 1})),
                   concat(repeat(4, Rational(5, 4)), repeat(4, Rational(7, 4))),
                   ints({50, 587, 2762, 6664, 8738, 5936, 1640}), "81/16 * pi^2",
                   "double acceleration at (a,b,n)=(1,1,5/2); factor 1640k^6+5936k^5+8738k^4+..."));
  return c;
}

void validate_entry(const CatalogEntry& e) {
  if (e.id.empty()) throw ValidationError("entry without id");
  if (e.citation.empty()) throw ValidationError("entry '" + e.id + "' has an empty citation");
  try {
    validate(e.series);
  } catch (const MathError& err) {
    throw ValidationError("entry '" + e.id + "': " + err.what());
  }
  Rational rate = asymptotic_rate(e.series);
  if (rate != e.expected_rate)
    throw ValidationError("entry '" + e.id + "': declared rate " + e.expected_rate.to_string() +
                          " but the series has rate " + rate.to_string());
}

std::string format_entries(const std::vector<CatalogEntry>& entries) {
  std::ostringstream os;
  bool first = true;
  for (const auto& e : entries) {
    if (!first) os << "\n";
    first = false;
    const SeriesSpec& s = e.series;
    os << "id = " << e.id << "\n";
    os << "z = " << s.ratio_z << "\n";
    os << "num = " << join(s.num_params) << "\n";
    os << "den = " << join(s.den_params) << "\n";
    os << "poly = " << join(ascending(s.factor_num)) << "\n";
    if (s.factor_den != MultiPoly(Rational(1))) os << "factor_den = " << join(ascending(s.factor_den)) << "\n";
    if (s.prefactor != Rational(1)) os << "prefactor = " << s.prefactor << "\n";
    if (s.start != 0) os << "start = " << s.start << "\n";
    if (e.target) os << "target = " << e.target->to_string() << "\n";
    os << "rate = " << e.expected_rate << "\n";
    os << "cite = " << e.citation << "\n";
    if (e.note) os << "note = " << *e.note << "\n";
  }
  return os.str();
}

std::vector<CatalogEntry> parse_entries(const std::string& text) {
  static const std::set<std::string> known = {"id",    "z",      "num",  "den",  "poly", "factor_den",
                                              "prefactor", "start", "target", "rate", "cite", "note"};
  static const std::vector<std::string> required = {"id", "z", "num", "den", "poly", "rate", "cite"};
  std::vector<CatalogEntry> out;
  std::set<std::string> ids;
  std::map<std::string, std::pair<std::string, int>> rec;
  int rec_line = 0;

  auto finish = [&](int end_line) {
    if (rec.empty()) return;
    std::string name = rec.count("id") ? rec["id"].first : "<unnamed>";
    auto where = [&](const std::string& key) { return rec.count(key) ? rec[key].second : rec_line; };
    for (const auto& k : required)
      if (!rec.count(k)) throw ParseError("record '" + name + "' lacks key '" + k + "'", rec_line);
    CatalogEntry e;
    e.id = name;
    std::string key;
    try {
      key = "z";
      e.series.ratio_z = Rational::parse(rec["z"].first);
      key = "num";
      e.series.num_params = parse_list(rec["num"].first);
      key = "den";
      e.series.den_params = parse_list(rec["den"].first);
      key = "poly";
      e.series.factor_num = poly_of(parse_list(rec["poly"].first));
      if (rec.count("factor_den")) {
        key = "factor_den";
        e.series.factor_den = poly_of(parse_list(rec["factor_den"].first));
      }
      if (rec.count("prefactor")) {
        key = "prefactor";
        e.series.prefactor = Rational::parse(rec["prefactor"].first);
      }
      if (rec.count("start")) {
        key = "start";
        Rational st = Rational::parse(rec["start"].first);
        if (!st.is_integer()) throw MalformedInput("start must be an integer");
        e.series.start = st.num().get_si();
      }
      key = "target";
      if (rec.count("target")) e.target = TargetConstant::parse(rec["target"].first);
      key = "rate";
      e.expected_rate = Rational::parse(rec["rate"].first);
    } catch (const MathError& err) {
      throw ParseError("record '" + name + "', key '" + key + "': " + err.what(), where(key));
    }
    if (e.series.num_params.size() != e.series.den_params.size())
      throw ParseError("record '" + name + "': num has " + std::to_string(e.series.num_params.size()) +
                           " parameters but den has " + std::to_string(e.series.den_params.size()),
                       where("num"));
    e.series.target = e.target;
    e.citation = rec["cite"].first;
    if (rec.count("note")) e.note = rec["note"].first;
    if (!ids.insert(e.id).second) throw ValidationError("duplicate id '" + e.id + "'");
    validate_entry(e);
    out.push_back(std::move(e));
    rec.clear();
    (void)end_line;
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) {
      finish(lineno);
      continue;
    }
    if (t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
    if (!known.count(key)) throw ParseError("unknown key '" + key + "'", lineno);
    if (rec.empty()) rec_line = lineno;
    if (rec.count(key)) throw ParseError("repeated key '" + key + "'", lineno);
    rec[key] = {value, lineno};
  }
  finish(lineno + 1);
  return out;
}

std::vector<CatalogEntry> load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open catalog file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_entries(ss.str());
}

void save(const std::vector<CatalogEntry>& entries, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write catalog file " + path.string());
  out << format_entries(entries);
}

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const std::string& id) {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

std::string render_list(const std::vector<CatalogEntry>& entries, ListFormat format) {
  std::ostringstream os;
  if (format == ListFormat::csv) {
    os << "id,rate,target,cite,note\n";
    for (const auto& e : entries)
      os << csv_field(e.id) << "," << e.expected_rate << "," << csv_field(e.target ? e.target->to_string() : "") << ","
         << csv_field(e.citation) << "," << csv_field(e.note.value_or("")) << "\n";
    return os.str();
  }
  std::size_t w = 2;
  for (const auto& e : entries) w = std::max(w, e.id.size());
  auto pad = [](std::string s, std::size_t n) {
    s.resize(std::max(s.size(), n), ' ');
    return s;
  };
  os << pad("id", w) << "  " << pad("rate", 9) << "  " << pad("target", 28) << "  cite\n";
  for (const auto& e : entries)
    os << pad(e.id, w) << "  " << pad(e.expected_rate.to_string(), 9) << "  "
       << pad(e.target ? e.target->to_string() : "-", 28) << "  " << e.citation << "\n";
  return os.str();
}

}  // namespace hyperaccel
