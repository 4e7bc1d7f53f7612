#include "brauer/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_set>

namespace brauer {
namespace {

std::string bits_of(const Subgroup& h, std::size_t n) {
  std::string b((n + 7) / 8, '\0');
  for (int e : h.elements) b[e / 8] = static_cast<char>(b[e / 8] | (1 << (e % 8)));
  return b;
}

std::map<int, int> order_profile(const Group& g, const Subgroup& h) {
  std::map<int, int> prof;
  for (int e : h.elements) prof[g.element_order(e)]++;
  return prof;
}

bool subgroup_abelian(const Group& g, const Subgroup& h) {
  for (int a : h.generators)
    for (int b : h.generators)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

bool normal_in(const Group& g, const Subgroup& n, const Subgroup& h) {
  for (int s : h.generators)
    for (int x : n.generators)
      if (!n.contains(g.conj(s, x))) return false;
  return true;
}

std::string abelian_label(const Group& g, const Subgroup& h) {
  // Primary decomposition from counts of elements of p-power order.
  std::map<int, std::vector<int>> primary;  // prime -> exponents
  std::size_t n = h.order();
  for (int p = 2; n > 1; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    std::vector<int> s{0};  // s[k] = log_p #{x : x^(p^k) = 1}
    for (int k = 1;; ++k) {
      long pk = 1;
      for (int i = 0; i < k; ++i) pk *= p;
      std::size_t cnt = 0;
      for (int e : h.elements)
        if (pk % g.element_order(e) == 0) ++cnt;
      int lg = 0;
      while (cnt > 1) {
        cnt /= p;
        ++lg;
      }
      if (lg == s.back()) break;
      s.push_back(lg);
    }
    // Number of cyclic factors of order >= p^k is s[k] - s[k-1].
    std::vector<int> exps;
    for (std::size_t k = 1; k < s.size(); ++k) {
      int ge_k = s[k] - s[k - 1];
      int ge_next = k + 1 < s.size() ? s[k + 1] - s[k] : 0;
      for (int j = 0; j < ge_k - ge_next; ++j) exps.push_back(static_cast<int>(k));
    }
    std::sort(exps.rbegin(), exps.rend());
    primary[p] = exps;
  }
  std::size_t nfactors = 0;
  for (auto& [p, e] : primary) nfactors = std::max(nfactors, e.size());
  std::vector<long> inv(nfactors, 1);
  for (auto& [p, e] : primary)
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) inv[i] *= p;
  std::sort(inv.begin(), inv.end());
  std::string out;
  for (long d : inv) out += (out.empty() ? "C" : "xC") + std::to_string(d);
  return out;
}

}  // namespace

std::string subgroup_label(const Group& g, const Subgroup& h) {
  const std::size_t n = h.order();
  if (n == 1) return "1";
  auto prof = order_profile(g, h);
  if (prof.rbegin()->first == static_cast<int>(n)) return "C" + std::to_string(n);
  if (subgroup_abelian(g, h)) return abelian_label(g, h);
  auto has = [&](std::map<int, int> want) { return prof == want; };
  if (n == 8 && prof[2] == 1) return "Q8";
  if (n == 12 && has({{1, 1}, {2, 3}, {3, 8}})) return "A4";
  if (n == 24 && has({{1, 1}, {2, 9}, {3, 8}, {4, 6}})) return "S4";
  if (n == 60 && has({{1, 1}, {2, 15}, {3, 20}, {5, 24}})) return "A5";
  if (n == 120 && has({{1, 1}, {2, 25}, {3, 20}, {4, 30}, {5, 24}, {6, 20}})) return "S5";
  if (n == 360 && has({{1, 1}, {2, 45}, {3, 80}, {4, 90}, {5, 144}})) return "A6";
  if (n == 720 && has({{1, 1}, {2, 75}, {3, 80}, {4, 180}, {5, 144}, {6, 240}})) return "S6";
  // Dihedral: cyclic subgroup of index 2 with only involutions outside it.
  for (int a : h.elements) {
    if (static_cast<std::size_t>(g.element_order(a)) * 2 != n) continue;
    Subgroup c = g.closure({a});
    bool dihedral = true;
    for (int e : h.elements)
      if (!c.contains(e) && g.element_order(e) != 2) dihedral = false;
    if (dihedral) return n == 6 ? "S3" : "D" + std::to_string(n);
  }
  // Split extension of a normal cyclic subgroup by a cyclic complement.
  std::vector<int> cand(h.elements.begin(), h.elements.end());
  std::sort(cand.begin(), cand.end(), [&](int x, int y) { return g.element_order(x) > g.element_order(y); });
  for (int a : cand) {
    const std::size_t na = g.element_order(a);
    if (na < 2 || n % na) continue;
    Subgroup c = g.closure({a});
    if (!normal_in(g, c, h)) continue;
    for (int b : h.elements) {
      if (static_cast<std::size_t>(g.element_order(b)) != n / na) continue;
      Subgroup d = g.closure({b});
      bool trivial_meet = true;
      for (int e : d.elements)
        if (e != 0 && c.contains(e)) trivial_meet = false;
      if (trivial_meet) return "C" + std::to_string(na) + ":C" + std::to_string(n / na);
    }
  }
  return "G" + std::to_string(n);
}

const std::vector<SubgroupClass>& Group::subgroup_classes() const {
  if (subgroup_cache_) return *subgroup_cache_;
  const std::size_t n = order();
  std::unordered_set<std::string> seen;
  std::vector<SubgroupClass> classes;

  auto add_class = [&](const Subgroup& k) -> bool {
    if (seen.count(bits_of(k, n))) return false;
    SubgroupClass sc;
    sc.representative = k;
    std::size_t distinct = 0;
    for (std::size_t x = 0; x < n; ++x) {
      Subgroup c = conjugate(k, static_cast<int>(x));
      if (seen.insert(bits_of(c, n)).second) ++distinct;
      if (c.elements < sc.representative.elements) sc.representative = std::move(c);
    }
    sc.class_size = distinct;
    classes.push_back(std::move(sc));
    return true;
  };

  std::vector<Subgroup> cyclic;
  {
    std::unordered_set<std::string> cyc_seen;
    for (std::size_t e = 1; e < n; ++e) {
      Subgroup c = closure({static_cast<int>(e)});
      if (cyc_seen.insert(bits_of(c, n)).second) cyclic.push_back(std::move(c));
    }
  }
  std::deque<Subgroup> work;
  Subgroup triv = trivial();
  add_class(triv);
  for (const auto& c : cyclic)
    if (add_class(c)) work.push_back(c);
  while (!work.empty()) {
    Subgroup h = std::move(work.front());
    work.pop_front();
    for (const auto& c : cyclic) {
      int gen = c.generators.front();
      if (h.contains(gen)) continue;
      std::vector<int> gens = h.generators;
      gens.push_back(gen);
      Subgroup k = closure(gens);
      if (add_class(k)) work.push_back(std::move(k));
    }
  }
  std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.representative.elements < b.representative.elements;
  });
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    classes[i].label = subgroup_label(*this, classes[i].representative);
    by_label[classes[i].label].push_back(i);
  }
  for (auto& [label, idx] : by_label) {
    if (idx.size() < 2) continue;
    for (std::size_t k = 0; k < idx.size(); ++k) classes[idx[k]].label = label + static_cast<char>('a' + k);
  }
  subgroup_cache_ = std::make_shared<std::vector<SubgroupClass>>(std::move(classes));
  return *subgroup_cache_;
}

CosetSpace::CosetSpace(const Group& g, Subgroup h) : group_(&g), h_(std::move(h)) {
  index_cosets();
  std::vector<int> reps{0};
  // coset_of_ currently holds canonical keys (least element of xH).
  std::vector<int> key_to_coset(g.order(), -1);
  key_to_coset[coset_of_[0]] = 0;
  for (std::size_t k = 0; k < reps.size(); ++k)
    for (int s : g.generators()) {
      int y = g.mul(s, reps[k]);
      int key = coset_of_[y];
      if (key_to_coset[key] == -1) {
        key_to_coset[key] = static_cast<int>(reps.size());
        reps.push_back(y);
      }
    }
  for (auto& c : coset_of_) c = key_to_coset[c];
  reps_ = std::move(reps);
}

CosetSpace::CosetSpace(const Group& g, Subgroup h, std::vector<int> representatives)
    : group_(&g), h_(std::move(h)), reps_(std::move(representatives)) {
  index_cosets();
  if (reps_.size() * h_.order() != g.order()) throw std::invalid_argument("coset representatives: wrong count");
  std::vector<int> key_to_coset(g.order(), -1);
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    int key = coset_of_[reps_[i]];
    if (key_to_coset[key] != -1) throw std::invalid_argument("coset representatives: two in one coset");
    key_to_coset[key] = static_cast<int>(i);
  }
  for (auto& c : coset_of_) c = key_to_coset[c];
}

void CosetSpace::index_cosets() {
  const Group& g = *group_;
  coset_of_.assign(g.order(), -1);
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (coset_of_[x] != -1) continue;
    int key = static_cast<int>(g.order());
    for (int e : h_.elements) key = std::min(key, g.mul(static_cast<int>(x), e));
    for (int e : h_.elements) coset_of_[g.mul(static_cast<int>(x), e)] = key;
  }
}

Perm CosetSpace::permutation(int g) const {
  Perm p(size());
  for (std::size_t i = 0; i < size(); ++i) p[i] = act(g, static_cast<int>(i));
  return p;
}

int primitive_root(int p) {
  for (int r = 1; r < p; ++r) {
    int x = 1, k = 0;
    do {
      x = x * r % p;
      ++k;
    } while (x != 1);
    if (k == p - 1) return r;
  }
  throw std::invalid_argument("no primitive root");
}

namespace presets {

Group symmetric(int n) {
  if (n < 1) throw std::invalid_argument("symmetric: n >= 1");
  if (n == 1) return Group::from_generators({identity_perm(1)}, "S1");
  Perm t = identity_perm(n), c(n);
  std::swap(t[0], t[1]);
  for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return Group::from_generators({t, c}, "S" + std::to_string(n));
}

Group alternating(int n) {
  if (n < 3) return Group::from_generators({identity_perm(std::max(n, 1))}, "A" + std::to_string(n));
  std::vector<Perm> gens;
  for (int i = 2; i < n; ++i) {
    Perm c = identity_perm(n);
    c[0] = 1;
    c[1] = i;
    c[i] = 0;
    gens.push_back(c);
  }
  return Group::from_generators(gens, "A" + std::to_string(n));
}

Group cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic: n >= 1");
  Perm c(n);
  for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
  Group G = Group::from_generators({c}, "C" + std::to_string(n));
  G.set_named("g", G.index_of(c));
  return G;
}

Group dihedral(int n) {
  if (n < 2) throw std::invalid_argument("dihedral: n >= 2");
  Perm g, h;
  if (n == 2) {
    g = {1, 0, 3, 2};
    h = {2, 3, 0, 1};
  } else {
    g.resize(n);
    h.resize(n);
    for (int i = 0; i < n; ++i) {
      g[i] = (i + 1) % n;
      h[i] = (n - i) % n;
    }
  }
  Group G = Group::from_generators({g, h}, "D2n:" + std::to_string(n));
  G.set_named("g", G.index_of(g));
  G.set_named("h", G.index_of(h));
  return G;
}

Group borel(int p) {
  if (p < 3) throw std::invalid_argument("borel: p must be an odd prime");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("borel: p must be prime");
  const int r = primitive_root(p);
  Perm g(p), h(p);
  for (int x = 0; x < p; ++x) {
    g[x] = (x + 1) % p;
    h[x] = static_cast<int>(static_cast<long>(r) * x % p);
  }
  Group G = Group::from_generators({g, h}, "Borel:" + std::to_string(p));
  if (G.order() != static_cast<std::size_t>(p * (p - 1))) throw std::logic_error("borel: unfaithful realization");
  G.set_named("g", G.index_of(g));
  G.set_named("h", G.index_of(h));
  return G;
}

Group by_name(const std::string& spec) {
  auto number_after = [&](std::size_t pos) {
    std::string tail = spec.substr(pos);
    if (tail.empty() || !std::all_of(tail.begin(), tail.end(), ::isdigit))
      throw std::invalid_argument("unknown group preset '" + spec + "'");
    return std::stoi(tail);
  };
  if (spec.rfind("Borel:", 0) == 0) return borel(number_after(6));
  if (spec.rfind("D2n:", 0) == 0) return dihedral(number_after(4));
  if (spec.size() > 1 && spec[0] == 'S') return symmetric(number_after(1));
  if (spec.size() > 1 && spec[0] == 'A') return alternating(number_after(1));
  if (spec.size() > 1 && spec[0] == 'C') return cyclic(number_after(1));
  throw std::invalid_argument("unknown group preset '" + spec + "'");
}

}  // namespace presets
}  // namespace brauer
