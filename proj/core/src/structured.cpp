#include "brauer/structured.hpp"

#include "brauer/curve_file.hpp"

#include <sstream>

namespace brauer {

const std::string& Record::get(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  throw std::out_of_range("record '" + type + "' has no key '" + key + "'");
}

std::vector<std::string> Record::get_all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : fields)
    if (k == key) out.push_back(v);
  return out;
}

bool Record::has(const std::string& key) const {
  for (const auto& f : fields)
    if (f.first == key) return true;
  return false;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\') out += "\\\\";
    else if (c == '\n') out += "\\n";
    else out += c;
  }
  return out;
}

std::string unescape(const std::string& s, std::size_t line, std::size_t col) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (i + 1 == s.size()) throw ParseError("<structured>", line, col + i, "dangling escape");
    const char n = s[++i];
    if (n == '\\') out += '\\';
    else if (n == 'n') out += '\n';
    else throw ParseError("<structured>", line, col + i, "unknown escape");
  }
  return out;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!(std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_' ||
          c == '.'))
      return false;
  return true;
}

}  // namespace

std::string write_records(const std::vector<Record>& records) {
  std::ostringstream out;
  out << kStructuredHeader << "\n";
  for (const auto& r : records) {
    out << "record " << r.type << "\n";
    for (const auto& [k, v] : r.fields) {
      if (!valid_key(k)) throw std::invalid_argument("write_records: invalid key '" + k + "'");
      out << k << "=" << escape(v) << "\n";
    }
    out << "end\n";
  }
  return out.str();
}

std::vector<Record> read_records(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  const std::string src = "<structured>";
  if (!std::getline(in, line) || line != kStructuredHeader)
    throw ParseError(src, 1, 1, std::string("expected header '") + kStructuredHeader + "'");
  ++ln;
  std::vector<Record> out;
  bool open = false;
  while (std::getline(in, line)) {
    ++ln;
    if (!open) {
      if (line.empty()) continue;
      if (line.rfind("record ", 0) != 0 || line.size() == 7) throw ParseError(src, ln, 1, "expected 'record <type>'");
      out.push_back({line.substr(7), {}});
      open = true;
    } else if (line == "end") {
      open = false;
    } else {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError(src, ln, 1, "expected key=value");
      const std::string key = line.substr(0, eq);
      if (!valid_key(key)) throw ParseError(src, ln, 1, "invalid key '" + key + "'");
      out.back().add(key, unescape(line.substr(eq + 1), ln, eq + 2));
    }
  }
  if (open) throw ParseError(src, ln, 1, "record '" + out.back().type + "' is not terminated by 'end'");
  return out;
}

Record to_record(const ParityVerdict& v) {
  Record r{"verdict", {}};
  r.add("combination", v.combination);
  r.add("parity", v.parity ? "odd" : "even");
  r.add("evidence", to_string(v.evidence));
  for (const auto& a : v.assumptions) r.add("assumption", a);
  for (const auto& n : v.notes) r.add("note", n);
  return r;
}

ParityVerdict verdict_from_record(const Record& r) {
  if (r.type != "verdict") throw std::invalid_argument("not a verdict record");
  ParityVerdict v;
  v.combination = r.get("combination");
  const auto& p = r.get("parity");
  if (p != "even" && p != "odd") throw std::invalid_argument("parity must be even or odd");
  v.parity = p == "odd";
  const auto& e = r.get("evidence");
  bool found = false;
  for (auto ev : {Evidence::tamagawa_side, Evidence::root_number_side, Evidence::both})
    if (to_string(ev) == e) {
      v.evidence = ev;
      found = true;
    }
  if (!found) throw std::invalid_argument("unknown evidence '" + e + "'");
  v.assumptions = r.get_all("assumption");
  v.notes = r.get_all("note");
  return v;
}

TableSummary summarize(const RegConstTable& t) {
  TableSummary s;
  s.group = t.group ? t.group->name() : "";
  for (const auto& irr : t.irreducibles) s.irreducibles.push_back(irr.label);
  for (const auto& rel : t.relations) s.relations.push_back(rel.name);
  for (const auto& row : t.entries) {
    std::vector<Integer> r;
    for (const auto& e : row) r.push_back(e.representative());
    s.entries.push_back(r);
  }
  return s;
}

Record to_record(const TableSummary& t) {
  Record r{"regconst", {}};
  r.add("group", t.group);
  for (const auto& l : t.irreducibles) r.add("irreducible", l);
  for (std::size_t i = 0; i < t.relations.size(); ++i) {
    std::string row = t.relations[i] + " :";
    for (const auto& e : t.entries[i]) row += " " + e.get_str();
    r.add("row", row);
  }
  return r;
}

TableSummary table_from_record(const Record& r) {
  if (r.type != "regconst") throw std::invalid_argument("not a regconst record");
  TableSummary t;
  t.group = r.get("group");
  t.irreducibles = r.get_all("irreducible");
  for (const auto& row : r.get_all("row")) {
    const auto colon = row.rfind(" :");
    if (colon == std::string::npos) throw std::invalid_argument("malformed row '" + row + "'");
    t.relations.push_back(row.substr(0, colon));
    std::istringstream in(row.substr(colon + 2));
    std::vector<Integer> entries;
    std::string tok;
    while (in >> tok) entries.emplace_back(tok);
    if (entries.size() != t.irreducibles.size()) throw std::invalid_argument("row width mismatch in '" + row + "'");
    t.entries.push_back(entries);
  }
  return t;
}

}  // namespace brauer
