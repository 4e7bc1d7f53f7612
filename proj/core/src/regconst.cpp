#include "brauer/regconst.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace brauer {

std::string render_relation(const Group& g, const RelationVector& v) {
  const auto& classes = g.subgroup_classes();
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 0) pos.push_back(i);
    if (v[i] < 0) neg.push_back(i);
  }
  std::reverse(pos.begin(), pos.end());
  std::string out;
  auto term = [&](std::size_t i) {
    long c = std::labs(v[i]);
    const std::string& label = classes[i].label;
    std::string coef;
    if (c != 1) coef = std::to_string(c) + (label == "1" ? "*" : "");
    return coef + label;
  };
  for (std::size_t i : pos) out += (out.empty() ? "" : "+") + term(i);
  for (std::size_t i : neg) out += "-" + term(i);
  return out.empty() ? "0" : out;
}

RelationVector parse_relation(const Group& g, const std::string& text) {
  const auto& classes = g.subgroup_classes();
  RelationVector v(classes.size(), 0);
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("relation '" + text + "', column " + std::to_string(i + 1) + ": " + what);
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "0") return v;
  if (s.empty()) fail("empty relation");
  while (i < s.size()) {
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected '+' or '-'");
    }
    std::size_t end = i;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string t = s.substr(i, end - i);
    if (t.empty()) fail("empty term");
    long coef = 1;
    std::string label = t;
    auto star = t.find('*');
    if (star != std::string::npos) {
      std::string c = t.substr(0, star);
      if (c.empty() || !std::all_of(c.begin(), c.end(), ::isdigit)) fail("bad coefficient");
      coef = std::stol(c);
      label = t.substr(star + 1);
    } else if (t != "1") {
      std::size_t k = 0;
      while (k < t.size() && std::isdigit(static_cast<unsigned char>(t[k]))) ++k;
      if (k == t.size()) fail("write k*1 for multiples of the trivial subgroup");
      if (k > 0) {
        coef = std::stol(t.substr(0, k));
        label = t.substr(k);
      }
    }
    std::size_t idx = classes.size();
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (classes[c].label == label) idx = c;
    if (idx == classes.size()) fail("unknown subgroup label '" + label + "'");
    v[idx] += sign * coef;
    i = end;
  }
  return v;
}

std::vector<NamedRelation> standard_relations(const Group& g) {
  std::vector<NamedRelation> out;
  auto add = [&](const std::string& name) { out.push_back({name, parse_relation(g, name)}); };
  const auto& classes = g.subgroup_classes();
  const std::string top = classes.back().label;
  if (top == "S3") {
    add("2S3+1-2C2-C3");
  } else if (top == "A5") {
    add("1-3C2+2C2xC2");
    add("C2xC2-2D10-A4+2A5");
    add("S3-D10-A4+A5");
    add("1-2C2-C5+2D10");
    add("C3-C5-2A4+2A5");
  } else if (g.name().rfind("Borel:", 0) == 0) {
    const int p = std::stoi(g.name().substr(6));
    const std::string cp1 = "C" + std::to_string(p - 1), cp = "C" + std::to_string(p);
    const std::string k = std::to_string(p - 1);
    add("1-" + k + cp1 + "-" + cp + "+" + k + top);
  } else if (g.name().rfind("D2n:", 0) == 0) {
    const int n = std::stoi(g.name().substr(4));
    if (n % 2 == 1) add("1-2C2-C" + std::to_string(n) + "+2" + top);
  }
  return out;
}

SquareClass regulator_constant(const Group& g, const RelationVector& theta, const RationalModule& rho,
                               const QMatrix* gram) {
  if (!rho.irreducible) throw std::invalid_argument("regulator_constant: module is not certified irreducible");
  if (!is_relation(g, theta)) throw std::invalid_argument("regulator_constant: not a relation");
  const QMatrix form = gram ? *gram : invariant_inner_product(rho);
  const auto& classes = g.subgroup_classes();
  Rational product = 1;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] == 0) continue;
    Rational d = gram_det_on_fixed(rho, classes[i].representative, form);
    Rational pw = 1;
    for (long k = 0; k < std::labs(theta[i]); ++k) pw *= d;
    product *= theta[i] > 0 ? pw : 1 / pw;
  }
  return SquareClass::of(product);
}

RegConstTable regconst_table(const Group& g, const std::vector<NamedRelation>& extra, bool include_lattice,
                             const DecomposeOptions& opts) {
  RegConstTable t;
  t.group = &g;
  t.irreducibles = rational_irreducibles(g, opts);
  if (include_lattice) {
    ZMatrix lattice = relation_lattice(g);
    for (std::size_t r = 0; r < lattice.rows(); ++r) {
      RelationVector v;
      for (std::size_t c = 0; c < lattice.cols(); ++c) v.push_back(lattice(r, c).get_si());
      t.relations.push_back({render_relation(g, v), v});
    }
  }
  for (const auto& r : extra) t.relations.push_back(r);
  for (const auto& r : t.relations) {
    std::vector<SquareClass> row;
    for (const auto& irr : t.irreducibles) row.push_back(regulator_constant(g, r.coefficients, irr.module));
    t.entries.push_back(std::move(row));
  }
  return t;
}

SquareClass regulator_quotient_class(const RegConstTable& t, std::size_t relation, const std::vector<long>& mult) {
  if (relation >= t.entries.size()) throw std::out_of_range("regulator_quotient_class: no such relation");
  if (mult.size() != t.irreducibles.size())
    throw std::invalid_argument("regulator_quotient_class: one multiplicity per irreducible expected");
  SquareClass out;
  for (std::size_t k = 0; k < mult.size(); ++k) {
    if (mult[k] < 0) throw std::invalid_argument("regulator_quotient_class: negative multiplicity");
    if (mult[k] % 2) out = out * t.entries[relation][k];
  }
  return out;
}

std::vector<ComputableCombination> computable_combinations(const RegConstTable& t) {
  std::set<Integer> primes;
  for (const auto& row : t.entries)
    for (const auto& e : row)
      for (const auto& [p, k] : factorize(e.representative())) primes.insert(p);
  std::vector<ComputableCombination> out;
  const std::size_t n = t.irreducibles.size();
  for (const auto& p : primes) {
    std::vector<std::vector<int>> rows;
    for (const auto& row : t.entries) {
      std::vector<int> v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = row[k].ord_parity(p);
      rows.push_back(v);
    }
    // Reduced row echelon form over F2.
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
      std::size_t piv = r;
      while (piv < rows.size() && !rows[piv][c]) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[piv], rows[r]);
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (i != r && rows[i][c])
          for (std::size_t j = 0; j < n; ++j) rows[i][j] ^= rows[r][j];
      ++r;
    }
    rows.resize(r);
    if (rows.empty()) continue;
    ComputableCombination cc;
    cc.prime = p;
    for (const auto& v : rows) {
      std::string s;
      for (std::size_t k = 0; k < n; ++k)
        if (v[k]) s += (s.empty() ? "" : "+") + t.irreducibles[k].label;
      cc.rendered.push_back(s);
    }
    cc.basis = std::move(rows);
    out.push_back(std::move(cc));
  }
  return out;
}

}  // namespace brauer
