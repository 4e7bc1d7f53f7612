#include "brauer/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace brauer {

Perm compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) r[x] = a[b[x]];
  return r;
}

Perm invert(const Perm& a) {
  Perm r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[a[x]] = static_cast<int>(x);
  return r;
}

Perm identity_perm(int degree) {
  Perm r(degree);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

std::string cycle_string(const Perm& a) {
  std::vector<bool> seen(a.size(), false);
  std::ostringstream os;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (seen[x] || a[x] == static_cast<int>(x)) continue;
    os << '(';
    std::size_t y = x;
    bool first = true;
    while (!seen[y]) {
      seen[y] = true;
      os << (first ? "" : " ") << y;
      first = false;
      y = a[y];
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

Perm parse_cycles(const std::string& text, int degree) {
  std::vector<std::vector<int>> cycles;
  int max_point = -1;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("cycle notation, column " + std::to_string(i + 1) + ": " + what);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') fail("expected '('");
    ++i;
    std::vector<int> cyc;
    while (true) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a point");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      if (std::find(cyc.begin(), cyc.end(), v) != cyc.end()) fail("repeated point in cycle");
      cyc.push_back(v);
      max_point = std::max(max_point, v);
    }
    cycles.push_back(cyc);
  }
  if (degree <= 0) degree = max_point + 1;
  if (max_point >= degree) throw std::invalid_argument("cycle notation: point exceeds degree");
  Perm p = identity_perm(degree);
  // Cycles compose right to left like the product of permutations.
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    Perm c = identity_perm(degree);
    for (std::size_t k = 0; k < it->size(); ++k) c[(*it)[k]] = (*it)[(k + 1) % it->size()];
    p = compose(c, p);
  }
  return p;
}

bool Subgroup::contains(int e) const { return std::binary_search(elements.begin(), elements.end(), e); }

namespace {

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ULL;
    for (int v : p) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

}  // namespace

unsigned long long schreier_sims_order(const std::vector<Perm>& generators, int degree) {
  std::vector<Perm> strong;
  for (const auto& g : generators)
    if (!is_identity(g)) strong.push_back(g);
  std::vector<int> base;
  auto moved_point = [&](const Perm& p) {
    for (int x = 0; x < degree; ++x)
      if (p[x] != x) return x;
    return -1;
  };
  for (const auto& s : strong) {
    bool fixes_all = true;
    for (int b : base)
      if (s[b] != b) fixes_all = false;
    if (fixes_all) base.push_back(moved_point(s));
  }
  struct Level {
    std::vector<int> orbit;
    std::unordered_map<int, Perm> trans;
  };
  std::vector<Level> levels;
  auto level_gens = [&](std::size_t i) {
    std::vector<const Perm*> out;
    for (const auto& s : strong) {
      bool ok = true;
      for (std::size_t j = 0; j < i; ++j)
        if (s[base[j]] != base[j]) ok = false;
      if (ok) out.push_back(&s);
    }
    return out;
  };
  auto build_level = [&](std::size_t i) {
    Level lv;
    lv.trans[base[i]] = identity_perm(degree);
    lv.orbit.push_back(base[i]);
    auto gens = level_gens(i);
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
      int x = lv.orbit[k];
      for (const Perm* s : gens) {
        int y = (*s)[x];
        if (!lv.trans.count(y)) {
          lv.trans[y] = compose(*s, lv.trans[x]);
          lv.orbit.push_back(y);
        }
      }
    }
    return lv;
  };
  levels.resize(base.size());
  for (std::size_t i = base.size(); i-- > 0;) levels[i] = build_level(i);

  auto sift = [&](Perm g, std::size_t from) -> std::pair<Perm, std::size_t> {
    for (std::size_t j = from; j < base.size(); ++j) {
      auto it = levels[j].trans.find(g[base[j]]);
      if (it == levels[j].trans.end()) return {g, j};
      g = compose(invert(it->second), g);
    }
    return {g, base.size()};
  };

  long i = static_cast<long>(base.size()) - 1;
  while (i >= 0) {
    levels[i] = build_level(i);
    bool restarted = false;
    auto gens = level_gens(i);
    for (std::size_t k = 0; k < levels[i].orbit.size() && !restarted; ++k) {
      int x = levels[i].orbit[k];
      for (const Perm* s : gens) {
        Perm sg = compose(invert(levels[i].trans.at((*s)[x])), compose(*s, levels[i].trans.at(x)));
        auto [h, j] = sift(sg, i + 1);
        if (is_identity(h)) continue;
        strong.push_back(h);
        if (j == base.size()) {
          base.push_back(moved_point(h));
          levels.emplace_back();
          levels[j] = build_level(j);
        }
        for (std::size_t l = i + 1; l <= j; ++l) levels[l] = build_level(l);
        i = static_cast<long>(j);
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
  unsigned long long order = 1;
  for (const auto& lv : levels) order *= lv.orbit.size();
  return order;
}

Group Group::from_generators(std::vector<Perm> generators, std::string name, std::size_t cap) {
  if (generators.empty()) throw std::invalid_argument("group needs at least one generator");
  Group G;
  G.name_ = std::move(name);
  G.degree_ = static_cast<int>(generators.front().size());
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != G.degree_) throw std::invalid_argument("generators of unequal degree");
    Perm sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != identity_perm(G.degree_)) throw std::invalid_argument("generator is not a permutation");
  }
  const auto ss_order = schreier_sims_order(generators, G.degree_);
  if (ss_order > cap)
    throw CapacityError("group order " + std::to_string(ss_order) + " exceeds element cap " + std::to_string(cap));

  std::unordered_map<Perm, int, PermHash> seen;
  std::vector<Perm> elems{identity_perm(G.degree_)};
  seen[elems[0]] = 0;
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const auto& s : generators) {
      Perm y = compose(elems[k], s);
      if (!seen.count(y)) {
        seen[y] = static_cast<int>(elems.size());
        elems.push_back(std::move(y));
      }
    }
  if (elems.size() != ss_order) throw std::logic_error("closure and Schreier-Sims orders disagree");
  std::sort(elems.begin(), elems.end());
  seen.clear();
  for (std::size_t k = 0; k < elems.size(); ++k) seen[elems[k]] = static_cast<int>(k);

  const std::size_t n = elems.size();
  G.elements_ = std::move(elems);
  G.table_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) G.table_[a * n + b] = seen.at(compose(G.elements_[a], G.elements_[b]));
  G.inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) G.inverse_[a] = seen.at(invert(G.elements_[a]));
  G.orders_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    int x = static_cast<int>(a), k = 1;
    while (x != 0) {
      x = G.mul(x, static_cast<int>(a));
      ++k;
    }
    G.orders_[a] = a == 0 ? 1 : k;
  }
  for (const auto& g : generators) G.gens_.push_back(seen.at(g));
  G.gen_perms_ = std::move(generators);

  G.class_index_.assign(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    if (G.class_index_[a] != -1) continue;
    ConjugacyClass cc;
    cc.representative = static_cast<int>(a);
    cc.element_order = G.orders_[a];
    const int ci = static_cast<int>(G.classes_.size());
    std::vector<int> queue{static_cast<int>(a)};
    G.class_index_[a] = ci;
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (int s : G.gens_) {
        int y = G.conj(s, queue[k]);
        if (G.class_index_[y] == -1) {
          G.class_index_[y] = ci;
          queue.push_back(y);
        }
      }
    std::sort(queue.begin(), queue.end());
    cc.elements = std::move(queue);
    G.classes_.push_back(std::move(cc));
  }
  return G;
}

int Group::index_of(const Perm& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return -1;
  return static_cast<int>(it - elements_.begin());
}

int Group::power(int a, long k) const {
  long o = orders_[a];
  k %= o;
  if (k < 0) k += o;
  int r = 0;
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

int Group::named(const std::string& key) const {
  auto it = named_.find(key);
  if (it == named_.end()) throw std::out_of_range("group has no named element '" + key + "'");
  return it->second;
}

Subgroup Group::closure(const std::vector<int>& gens) const {
  std::vector<char> in(order(), 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (int s : gens) {
      int y = mul(elems[k], s);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  Subgroup h;
  h.elements = std::move(elems);
  for (int s : gens)
    if (s != 0 && std::find(h.generators.begin(), h.generators.end(), s) == h.generators.end())
      h.generators.push_back(s);
  return h;
}

Subgroup Group::whole() const { return closure(gens_); }
Subgroup Group::trivial() const { return closure({}); }

Subgroup Group::conjugate(const Subgroup& h, int g) const {
  Subgroup out;
  for (int x : h.elements) out.elements.push_back(conj(g, x));
  std::sort(out.elements.begin(), out.elements.end());
  for (int x : h.generators) out.generators.push_back(conj(g, x));
  return out;
}

bool Group::is_normal(const Subgroup& h) const {
  for (int s : gens_)
    for (int x : h.generators)
      if (!h.contains(conj(s, x))) return false;
  return true;
}

bool Group::is_abelian(const Subgroup& h) const {
  for (int a : h.generators)
    for (int b : h.generators)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<int> canonical_key(const Group& g, const Subgroup& h) {
  std::vector<int> best = h.elements;
  for (std::size_t x = 0; x < g.order(); ++x) {
    auto c = g.conjugate(h, static_cast<int>(x)).elements;
    if (c < best) best = std::move(c);
  }
  return best;
}

std::size_t Group::find_class(const Subgroup& h) const {
  const auto& classes = subgroup_classes();
  auto key = canonical_key(*this, h);
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].representative.elements == key) return i;
  throw std::logic_error("subgroup not found among subgroup classes");
}

std::size_t Group::find_class_by_label(const std::string& label) const {
  const auto& classes = subgroup_classes();
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].label == label) return i;
  throw std::out_of_range("no subgroup class labelled '" + label + "'");
}

}  // namespace brauer
