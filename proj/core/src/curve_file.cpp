#include "brauer/curve_file.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace brauer {

ParseError::ParseError(const std::string& source, std::size_t l, std::size_t c, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(l) + ":" + std::to_string(c) + ": " + what), line(l), column(c) {}

namespace {

struct Value {
  enum Kind { integer, boolean, string } kind = integer;
  Integer i;
  bool b = false;
  std::string s;
  std::size_t line = 0, column = 0;
};

struct Table {
  std::string name;
  std::size_t line = 0;
  std::map<std::string, Value> values;
};

const std::set<std::string> kCurveKeys = {"name", "rank_k", "rank_m"};
const std::set<std::string> kPlaceKeys = {"place",       "kind",        "p",         "q",
                                          "type",        "ord_delta",   "c",         "omega_disc",
                                          "w_override",  "twist_square", "cstar_square", "a6_square",
                                          "a6_cube",     "minus_a4_square", "cubic_roots",
                                          "decomposition", "inertia"};

std::vector<Table> tokenize(const std::string& text, const std::string& src) {
  std::vector<Table> tables;
  std::istringstream in(text);
  std::string raw;
  std::size_t ln = 0;
  bool seen_place = false;
  while (std::getline(in, raw)) {
    ++ln;
    std::string line;
    bool quoted = false;
    for (char ch : raw) {
      if (ch == '"') quoted = !quoted;
      if (ch == '#' && !quoted) break;
      line += ch;
    }
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    const std::string body = line.substr(a, b - a + 1);
    const std::size_t col = a + 1;
    if (body == "[curve]") {
      if (seen_place) throw ParseError(src, ln, col, "[curve] must come before the first [[place]]");
      for (const auto& t : tables)
        if (t.name == "curve") throw ParseError(src, ln, col, "duplicate [curve] table");
      tables.push_back({"curve", ln, {}});
      continue;
    }
    if (body == "[[place]]") {
      seen_place = true;
      tables.push_back({"place", ln, {}});
      continue;
    }
    if (body.front() == '[') throw ParseError(src, ln, col, "unknown table header '" + body + "'");
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(src, ln, col, "expected key = value");
    std::string key = body.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    if (key.empty()) throw ParseError(src, ln, col, "missing key");
    for (char ch : key)
      if (!std::islower(static_cast<unsigned char>(ch)) && !std::isdigit(static_cast<unsigned char>(ch)) && ch != '_')
        throw ParseError(src, ln, col, "invalid key '" + key + "'");
    if (tables.empty()) throw ParseError(src, ln, col, "key '" + key + "' outside of a table");
    Table& t = tables.back();
    const auto& allowed = t.name == "curve" ? kCurveKeys : kPlaceKeys;
    if (!allowed.count(key)) throw ParseError(src, ln, col, "unknown key '" + key + "' in [" + t.name + "]");
    if (t.values.count(key)) throw ParseError(src, ln, col, "duplicate key '" + key + "'");
    std::size_t vstart = body.find_first_not_of(" \t", eq + 1);
    if (vstart == std::string::npos) throw ParseError(src, ln, col + eq + 1, "missing value for '" + key + "'");
    const std::string vtext = body.substr(vstart);
    Value v;
    v.line = ln;
    v.column = col + vstart;
    if (vtext.front() == '"') {
      if (vtext.size() < 2 || vtext.back() != '"' || vtext.find('"', 1) != vtext.size() - 1)
        throw ParseError(src, ln, v.column, "malformed string");
      v.kind = Value::string;
      v.s = vtext.substr(1, vtext.size() - 2);
    } else if (vtext == "true" || vtext == "false") {
      v.kind = Value::boolean;
      v.b = vtext == "true";
    } else {
      std::size_t k = (vtext[0] == '+' || vtext[0] == '-') ? 1 : 0;
      if (k == vtext.size()) throw ParseError(src, ln, v.column, "malformed value '" + vtext + "'");
      for (std::size_t j = k; j < vtext.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(vtext[j])))
          throw ParseError(src, ln, v.column, "malformed value '" + vtext + "'");
      v.kind = Value::integer;
      v.i = Integer(vtext[0] == '+' ? vtext.substr(1) : vtext);
    }
    t.values[key] = v;
  }
  return tables;
}

const Value* find(const Table& t, const std::string& key) {
  auto it = t.values.find(key);
  return it == t.values.end() ? nullptr : &it->second;
}

const Value& need(const Table& t, const std::string& key, const std::string& src) {
  const Value* v = find(t, key);
  if (!v) throw ParseError(src, t.line, 1, "[[place]] is missing required key '" + key + "'");
  return *v;
}

long as_long(const Value& v, const std::string& key, const std::string& src) {
  if (v.kind != Value::integer || !v.i.fits_slong_p())
    throw ParseError(src, v.line, v.column, "'" + key + "' must be an integer");
  return v.i.get_si();
}

const std::string& as_string(const Value& v, const std::string& key, const std::string& src) {
  if (v.kind != Value::string) throw ParseError(src, v.line, v.column, "'" + key + "' must be a string");
  return v.s;
}

bool as_bool(const Value& v, const std::string& key, const std::string& src) {
  if (v.kind != Value::boolean) throw ParseError(src, v.line, v.column, "'" + key + "' must be true or false");
  return v.b;
}

LocalCurveData build_place(const Table& t, const std::string& src) {
  PlaceKind kind = PlaceKind::finite;
  if (const Value* k = find(t, "kind")) {
    try {
      kind = parse_place_kind(as_string(*k, "kind", src));
    } catch (const std::invalid_argument& e) {
      throw ParseError(src, k->line, k->column, e.what());
    }
  }
  LocalCurveData d;
  if (kind == PlaceKind::finite) {
    const Value& pv = need(t, "p", src);
    const Value& qv = need(t, "q", src);
    const Value& tv = need(t, "type", src);
    if (qv.kind != Value::integer) throw ParseError(src, qv.line, qv.column, "'q' must be an integer");
    Reduction r;
    try {
      r = parse_reduction(as_string(tv, "type", src));
    } catch (const std::invalid_argument& e) {
      throw ParseError(src, tv.line, tv.column, e.what());
    }
    const Value* o = find(t, "ord_delta");
    const Value* c = find(t, "c");
    const Value* w = find(t, "omega_disc");
    try {
      d = finite_place(as_long(pv, "p", src), qv.i, r, o ? as_long(*o, "ord_delta", src) : 0,
                       c ? as_long(*c, "c", src) : 1, w ? as_long(*w, "omega_disc", src) : 0);
    } catch (const std::invalid_argument& e) {
      throw ParseError(src, t.line, 1, e.what());
    }
  } else {
    for (const char* key : {"p", "q", "type", "ord_delta", "c", "omega_disc"})
      if (const Value* v = find(t, key))
        throw ParseError(src, v->line, v->column, std::string("'") + key + "' is not allowed for archimedean places");
    d = kind == PlaceKind::real ? real_place() : complex_place();
  }
  if (const Value* v = find(t, "place")) d.place = as_string(*v, "place", src);
  if (const Value* v = find(t, "w_override")) {
    const long s = as_long(*v, "w_override", src);
    if (s != 1 && s != -1) throw ParseError(src, v->line, v->column, "'w_override' must be 1 or -1");
    d.w_override = static_cast<int>(s);
  }
  const std::pair<const char*, bool AdditiveHints::*> flags[] = {{"twist_square", &AdditiveHints::twist_square},
                                                                 {"cstar_square", &AdditiveHints::cstar_square},
                                                                 {"a6_square", &AdditiveHints::a6_square},
                                                                 {"a6_cube", &AdditiveHints::a6_cube},
                                                                 {"minus_a4_square", &AdditiveHints::minus_a4_square}};
  for (const auto& [key, member] : flags)
    if (const Value* v = find(t, key)) d.hints.*member = as_bool(*v, key, src);
  if (const Value* v = find(t, "cubic_roots")) {
    const long r = as_long(*v, "cubic_roots", src);
    if (r != 0 && r != 1 && r != 3) throw ParseError(src, v->line, v->column, "'cubic_roots' must be 0, 1 or 3");
    d.hints.cubic_roots = static_cast<int>(r);
  }
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(src, t.line, 1, e.what());
  }
  return d;
}

}  // namespace

CurveData parse_curve(const std::string& text, const std::string& source) {
  CurveData out;
  std::set<std::string> names;
  for (const auto& t : tokenize(text, source)) {
    if (t.name == "curve") {
      if (const Value* v = find(t, "name")) out.name = as_string(*v, "name", source);
      if (const Value* v = find(t, "rank_k")) out.rank_k = as_long(*v, "rank_k", source);
      if (const Value* v = find(t, "rank_m")) out.rank_m = as_long(*v, "rank_m", source);
      continue;
    }
    LocalCurveData d = build_place(t, source);
    if (d.place.empty()) d.place = d.finite() ? d.residue_size.get_str() : "inf" + std::to_string(out.places.size());
    if (!names.insert(d.place).second) throw ParseError(source, t.line, 1, "duplicate place '" + d.place + "'");
    out.places.push_back(d);
    const Value* dv = find(t, "decomposition");
    const Value* iv = find(t, "inertia");
    out.decomposition.push_back(dv ? as_string(*dv, "decomposition", source) : "");
    out.inertia.push_back(iv ? as_string(*iv, "inertia", source) : "");
  }
  auto blank = [](const std::vector<std::string>& v) {
    return std::all_of(v.begin(), v.end(), [](const std::string& s) { return s.empty(); });
  };
  if (blank(out.decomposition) && blank(out.inertia)) {
    out.decomposition.clear();
    out.inertia.clear();
  }
  return out;
}

CurveData load_curve(const std::string& path) {
  std::filesystem::path p(path);
  if (!std::filesystem::exists(p) && p.parent_path().empty()) {
    const char* env = std::getenv("BRAUER_DATA_DIR");
    p = std::filesystem::path(env && *env ? env : BRAUER_DATA_DIR) / p;
  }
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open curve file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_curve(ss.str(), p.string());
}

std::string write_curve(const CurveData& c) {
  auto plain = [](const std::string& s) {
    if (s.find_first_of("\"\n") != std::string::npos)
      throw std::invalid_argument("write_curve: string '" + s + "' contains a quote or newline");
  };
  plain(c.name);
  for (const auto& d : c.places) plain(d.place);
  for (const auto& w : c.decomposition) plain(w);
  for (const auto& w : c.inertia) plain(w);
  std::ostringstream out;
  if (!c.name.empty() || c.rank_k || c.rank_m) {
    out << "[curve]\n";
    if (!c.name.empty()) out << "name = \"" << c.name << "\"\n";
    if (c.rank_k) out << "rank_k = " << *c.rank_k << "\n";
    if (c.rank_m) out << "rank_m = " << *c.rank_m << "\n";
  }
  const AdditiveHints none;
  for (std::size_t i = 0; i < c.places.size(); ++i) {
    const auto& d = c.places[i];
    out << "\n[[place]]\nplace = \"" << d.place << "\"\nkind = \"" << to_string(d.kind) << "\"\n";
    if (d.finite()) {
      out << "p = " << d.residue_char << "\nq = " << d.residue_size << "\ntype = \"" << to_string(d.reduction)
          << "\"\nord_delta = " << d.ord_delta << "\nc = " << d.tamagawa << "\nomega_disc = " << d.omega_disc << "\n";
      // finite_place derives default hints from c; write them out whenever they differ from the blank set.
      const auto& h = d.hints;
      if (!(h == none)) {
        out << "twist_square = " << (h.twist_square ? "true" : "false") << "\n";
        out << "cstar_square = " << (h.cstar_square ? "true" : "false") << "\n";
        out << "a6_square = " << (h.a6_square ? "true" : "false") << "\n";
        out << "a6_cube = " << (h.a6_cube ? "true" : "false") << "\n";
        out << "minus_a4_square = " << (h.minus_a4_square ? "true" : "false") << "\n";
        out << "cubic_roots = " << h.cubic_roots << "\n";
      }
    }
    if (d.w_override) out << "w_override = " << *d.w_override << "\n";
    if (i < c.decomposition.size() && !c.decomposition[i].empty())
      out << "decomposition = \"" << c.decomposition[i] << "\"\n";
    if (i < c.inertia.size() && !c.inertia[i].empty()) out << "inertia = \"" << c.inertia[i] << "\"\n";
  }
  return out.str();
}

}  // namespace brauer
