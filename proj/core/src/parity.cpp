#include "brauer/parity.hpp"

#include "brauer/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <numeric>

namespace brauer {

std::string to_string(TowerFamily f) {
  switch (f) {
    case TowerFamily::borel: return "borel";
    case TowerFamily::dihedral: return "dihedral";
    case TowerFamily::false_tate: return "false_tate";
    case TowerFamily::s3: return "s3";
  }
  return "?";
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::tamagawa_side: return "tamagawa_side";
    case Evidence::root_number_side: return "root_number_side";
    case Evidence::both: return "both";
  }
  return "?";
}

namespace {

Subgroup meet(const Group& g, const Subgroup& a, const Subgroup& b) {
  std::vector<int> common;
  for (int x : a.elements)
    if (b.contains(x)) common.push_back(x);
  return g.closure(common);
}

int affine(const Group& g, int p, long a, long b) {
  Perm x(p);
  for (int i = 0; i < p; ++i) x[i] = static_cast<int>((((a * i + b) % p) + p) % p);
  const int idx = g.index_of(x);
  if (idx < 0) throw std::logic_error("affine map not in the group");
  return idx;
}

long powmod(long b, long e, long m) {
  Integer r;
  mpz_powm_ui(r.get_mpz_t(), Integer(((b % m) + m) % m).get_mpz_t(), e, Integer(m).get_mpz_t());
  return r.get_si();
}

long mult_order(long a, long p) {
  long k = 1, x = ((a % p) + p) % p;
  while (x != 1) {
    x = x * (a % p) % p;
    ++k;
  }
  return k;
}

Integer ipow(long b, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

void require_odd_prime(int p, const char* who) {
  if (p < 3 || !is_prime(Integer(p))) throw std::invalid_argument(std::string(who) + ": p must be an odd prime");
}

void check_kummer_m(int p, long m) {
  if (m < 2) throw std::invalid_argument("m must be an integer > 1");
  for (const auto& [q, k] : factorize(Integer(m)))
    if (k >= static_cast<unsigned>(p))
      throw std::invalid_argument("m must be p-th power free (" + q.get_str() + "^" + std::to_string(k) + " divides m)");
}

bool good_and_minimal(const LocalCurveData& v) { return v.reduction == Reduction::good && v.omega_disc == 0; }

// Primes above v; completions equal to K_v keep the root number override.
std::vector<LocalCurveData> above(const LocalCurveData& v, const PlaceDecomposition& dec) {
  std::vector<LocalCurveData> out;
  for (const auto& pr : dec.profiles) {
    LocalCurveData w = base_change(v, pr.e, pr.f);
    if (pr.e == 1 && pr.f == 1) w.w_override = v.w_override;
    for (long k = 0; k < pr.count; ++k) out.push_back(w);
  }
  return out;
}

int parity_of_sign(int w) { return w == 1 ? 0 : 1; }

}  // namespace

Subgroup TowerDescription::field_group(char field) const {
  switch (field) {
    case 'K': return group->whole();
    case 'M': return group->closure({group->named("g")});
    case 'L': return group->closure({group->named("h")});
    case 'F': return group->trivial();
  }
  throw std::invalid_argument(std::string("unknown field '") + field + "'");
}

PlaceDecomposition TowerDescription::decomposition(std::size_t place, char field) const {
  const auto& v = places.at(place);
  return decompose_place(*group, field_group(field), v.decomposition, v.inertia);
}

void TowerDescription::validate() const {
  if (!group) throw std::invalid_argument("tower has no group");
  for (std::size_t i = 0; i < places.size(); ++i) {
    places[i].data.validate();
    validate_local_galois(*group, places[i].decomposition, places[i].inertia, places[i].data);
    for (char field : {'K', 'M', 'L', 'F'}) {
      const auto dec = decomposition(i, field);
      const long index = static_cast<long>(group->order() / field_group(field).order());
      if (dec.degree() != index)
        throw std::invalid_argument("place '" + places[i].data.place + "': profile degree " +
                                    std::to_string(dec.degree()) + " differs from [" + field +
                                    ":K] = " + std::to_string(index));
    }
  }
}

TowerDescription make_tower(TowerFamily family, int p, std::shared_ptr<const Group> g, std::vector<TowerPlace> places) {
  TowerDescription t;
  t.family = family;
  t.p = p;
  t.group = std::move(g);
  t.places = std::move(places);
  t.validate();
  return t;
}

TowerDescription kummer_tower(const std::vector<LocalCurveData>& curve, int p, long m) {
  require_odd_prime(p, "kummer_tower");
  check_kummer_m(p, m);
  auto gp = std::make_shared<const Group>(presets::borel(p));
  const Group& G = *gp;
  const int g = G.named("g");
  std::vector<TowerPlace> places;
  for (const auto& v : curve) {
    TowerPlace tp{v, G.trivial(), G.trivial()};
    if (v.kind == PlaceKind::complex) throw std::invalid_argument("place '" + v.place + "': Q has no complex places");
    if (v.kind == PlaceKind::real) {
      tp.decomposition = tp.inertia = G.closure({affine(G, p, -1, 0)});
    } else {
      const long ell = v.residue_char;
      if (v.residue_size != ell)
        throw std::invalid_argument("place '" + v.place + "': residue field of a prime of Q must have q = p");
      if (ell != p && m % ell != 0) {
        const long a = ell % p;
        if (a != 1) {
          tp.decomposition = G.closure({affine(G, p, a, 0)});
        } else if (powmod(m, (ell - 1) / p, ell) != 1) {
          tp.decomposition = G.closure({g});
        }
      } else if (ell != p) {
        tp.inertia = G.closure({g});
        tp.decomposition = G.closure({g, affine(G, p, ell % p, 0)});
      } else if (m % p == 0 || powmod(m, p - 1, static_cast<long>(p) * p) != 1) {
        tp.decomposition = tp.inertia = G.whole();
      } else if (good_and_minimal(v)) {
        continue;
      } else {
        throw UnsupportedCase("place '" + v.place + "': p does not ramify in F but m^(p-1) = 1 mod p^2; "
                              "only good reduction is supported there");
      }
    }
    places.push_back(tp);
  }
  auto t = make_tower(TowerFamily::borel, p, gp, places);
  t.description = "Q(mu_" + std::to_string(p) + ", " + std::to_string(m) + "^(1/" + std::to_string(p) + "))/Q";
  return t;
}

Subgroup parse_subgroup_words(const Group& g, const std::string& words) {
  std::vector<int> gens;
  std::stringstream in(words);
  std::string word;
  while (std::getline(in, word, ',')) {
    word.erase(std::remove_if(word.begin(), word.end(), ::isspace), word.end());
    if (word.empty()) throw std::invalid_argument("empty word in '" + words + "'");
    int x = g.identity();
    std::stringstream factors(word);
    std::string f;
    while (std::getline(factors, f, '*')) {
      if (f == "1") continue;
      const auto caret = f.find('^');
      const std::string name = f.substr(0, caret);
      long e = 1;
      if (caret != std::string::npos) {
        const std::string ex = f.substr(caret + 1);
        std::size_t used = 0;
        try {
          e = std::stol(ex, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != ex.size()) throw std::invalid_argument("bad exponent in '" + f + "'");
      }
      int base;
      try {
        base = g.named(name);
      } catch (const std::exception&) {
        throw std::invalid_argument("unknown generator '" + name + "' in '" + words + "'");
      }
      const long ord = static_cast<long>(g.element_order(base));
      x = g.mul(x, g.power(base, static_cast<int>(((e % ord) + ord) % ord)));
    }
    gens.push_back(x);
  }
  return g.closure(gens);
}

TowerDescription tower_from_curve(const CurveData& curve, TowerFamily family, int p) {
  require_odd_prime(p, "tower_from_curve");
  if (family == TowerFamily::false_tate) throw std::invalid_argument("false Tate towers come from kummer data");
  if (family == TowerFamily::s3 && p != 3) throw std::invalid_argument("s3 towers have p = 3");
  auto g = std::make_shared<const Group>(family == TowerFamily::dihedral ? presets::dihedral(p) : presets::borel(p));
  std::vector<TowerPlace> places;
  for (std::size_t i = 0; i < curve.places.size(); ++i) {
    const auto& v = curve.places[i];
    const std::string d = i < curve.decomposition.size() ? curve.decomposition[i] : "";
    const std::string in = i < curve.inertia.size() ? curve.inertia[i] : "";
    if (d.empty() || in.empty())
      throw std::invalid_argument("place '" + v.place + "' needs decomposition and inertia words");
    places.push_back({v, parse_subgroup_words(*g, d), parse_subgroup_words(*g, in)});
  }
  auto t = make_tower(family, p, g, places);
  t.description = to_string(family) + " tower with per-place groups";
  return t;
}

ParityVerdict make_verdict(std::string combination, std::optional<int> tamagawa_parity,
                           std::optional<int> root_parity, std::vector<std::string> assumptions) {
  if (!tamagawa_parity && !root_parity) throw std::invalid_argument("make_verdict: no evidence");
  if (tamagawa_parity && root_parity && *tamagawa_parity != *root_parity)
    throw InconsistencyError("parity of " + combination + ": Tamagawa side gives " +
                             std::to_string(*tamagawa_parity) + ", root numbers give " + std::to_string(*root_parity));
  ParityVerdict v;
  v.combination = std::move(combination);
  v.parity = tamagawa_parity ? *tamagawa_parity : *root_parity;
  v.evidence = tamagawa_parity && root_parity ? Evidence::both
               : tamagawa_parity              ? Evidence::tamagawa_side
                                              : Evidence::root_number_side;
  v.assumptions = std::move(assumptions);
  return v;
}

BorelReport borel_parity(const TowerDescription& tower, int p, const KnownRanks& known) {
  require_odd_prime(p, "borel_parity");
  if (tower.family != TowerFamily::borel && tower.family != TowerFamily::s3)
    throw std::invalid_argument("borel_parity: tower is not a Borel tower");
  const Group& G = *tower.group;
  if (static_cast<long>(G.order()) != static_cast<long>(p) * (p - 1) || G.element_order(G.named("g")) != p)
    throw std::invalid_argument("borel_parity: group does not match p");
  BorelReport r;
  long ord = 0;
  bool roots = true;
  int root_sign = 1;
  Rational cls = 1;
  for (std::size_t i = 0; i < tower.places.size(); ++i) {
    const auto& tp = tower.places[i];
    PlaceContribution pc;
    pc.place = tp.data.place;
    pc.label = classify_borel_place(G, BorelScenario{p, tp.data, tp.decomposition, tp.inertia, ""});
    const FieldTerms k = field_terms(tp.data, tower.decomposition(i, 'K'), p),
                     m = field_terms(tp.data, tower.decomposition(i, 'M'), p),
                     l = field_terms(tp.data, tower.decomposition(i, 'L'), p),
                     f = field_terms(tp.data, tower.decomposition(i, 'F'), p);
    pc.ord_quotient = f.c_ord + (p - 1) * k.c_ord - m.c_ord - (p - 1) * l.c_ord;
    Rational q = f.c_value / m.c_value;
    for (int j = 0; j < p - 1; ++j) q *= k.c_value / l.c_value;
    cls *= q;
    ord += pc.ord_quotient;
    if (k.w && m.w && l.w) {
      pc.root_product = *k.w * *m.w * *l.w;
      root_sign *= *pc.root_product;
    } else {
      roots = false;
    }
    r.places.push_back(pc);
  }
  r.tamagawa_class = SquareClass::of(cls);
  const std::optional<int> tam = static_cast<int>(((ord % 2) + 2) % 2);
  const std::optional<int> root = roots ? std::optional<int>(parity_of_sign(root_sign)) : std::nullopt;
  const std::string pp = std::to_string(p);
  r.verdict = make_verdict("rk(E/K)+rk(E/M)+rk(E/L)", tam, root,
                           {"Sha(E/F)[" + pp + "^inf] finite", "local data complete at all bad and archimedean places"});
  if (!roots) r.verdict.notes.push_back("root numbers unavailable at some place; Tamagawa side only");
  if (known.k && known.m) {
    ParityVerdict d = r.verdict;
    d.combination = "rk(E/L)";
    d.parity = static_cast<int>(((r.verdict.parity - *known.k - *known.m) % 2 + 2) % 2);
    d.assumptions.push_back("rk(E/K) = " + std::to_string(*known.k) + ", rk(E/M) = " + std::to_string(*known.m));
    r.rank_over_l = d;
  }
  return r;
}

int root_number_cyclotomic(const std::vector<LocalCurveData>& curve, int p) {
  require_odd_prime(p, "root_number_cyclotomic");
  std::vector<LocalCurveData> all;
  for (const auto& v : curve) {
    PlaceDecomposition dec;
    if (v.kind == PlaceKind::real) {
      for (int i = 0; i < (p - 1) / 2; ++i) all.push_back(complex_place());
      continue;
    }
    if (v.kind != PlaceKind::finite) throw std::invalid_argument("place '" + v.place + "': expected a place of Q");
    if (v.residue_char == p) {
      dec.profiles = {{p - 1, 1, 1}};
    } else {
      const long f = mult_order(v.residue_char, p);
      dec.profiles = {{1, f, (p - 1) / f}};
    }
    for (const auto& w : above(v, dec)) all.push_back(w);
  }
  return global_root_number(all);
}

int root_number_radical(const std::vector<LocalCurveData>& curve, int p, long m, int n) {
  require_odd_prime(p, "root_number_radical");
  check_kummer_m(p, m);
  if (n < 0) throw std::invalid_argument("root_number_radical: n must be non-negative");
  const unsigned long deg = ipow(p, n).get_ui();
  std::vector<LocalCurveData> all;
  for (const auto& v : curve) {
    if (v.kind == PlaceKind::real) {
      all.push_back(real_place());
      for (unsigned long i = 0; i < (deg - 1) / 2; ++i) all.push_back(complex_place());
      continue;
    }
    if (v.kind != PlaceKind::finite) throw std::invalid_argument("place '" + v.place + "': expected a place of Q");
    const long ell = v.residue_char;
    PlaceDecomposition dec;
    if (n == 0) {
      dec.profiles = {{1, 1, 1}};
    } else if (ell != p && m % ell != 0) {
      std::map<long, long> count;
      for (unsigned d : factor_degrees_binomial_mod(deg, m % ell, ell)) ++count[d];
      for (const auto& [f, k] : count) dec.profiles.push_back({1, f, k});
    } else if (ell != p || m % p == 0) {
      dec.profiles = {{static_cast<long>(deg), 1, 1}};
    } else if (good_and_minimal(v)) {
      continue;
    } else {
      throw UnsupportedCase("place '" + v.place + "': splitting of p in K(m^(1/p^n)) with p not dividing m is only "
                            "supported for good reduction");
    }
    for (const auto& w : above(v, dec)) all.push_back(w);
  }
  return global_root_number(all);
}

std::vector<LadderLayer> false_tate_ladder(const std::vector<LocalCurveData>& curve, int p, long m, int n,
                                           std::optional<long> rank_k) {
  require_odd_prime(p, "false_tate_ladder");
  check_kummer_m(p, m);
  if (n < 0) throw std::invalid_argument("false_tate_ladder: n must be non-negative");
  for (const auto& v : curve)
    if (v.finite() && (v.residue_char == 2 || v.residue_char == 3) && !v.semistable() && m % v.residue_char == 0)
      throw HypothesisError("place '" + v.place + "': additive reduction at a prime above 6 that ramifies");

  const int w_k = root_number_radical(curve, p, m, 0);
  const int w_mu = root_number_cyclotomic(curve, p);
  // F_1 is the Borel(p) extension; compare with the odd-degree invariance w(F_i) = w(K(mu_p)).
  {
    const TowerDescription t = kummer_tower(curve, p, m);
    int w_f1 = 1;
    for (std::size_t i = 0; i < t.places.size(); ++i) {
      const auto terms = field_terms(t.places[i].data, t.decomposition(i, 'F'), p);
      if (!terms.w) throw UnsupportedCase("place '" + t.places[i].data.place + "': root number over F_1 unavailable");
      w_f1 *= *terms.w;
    }
    if (w_f1 != w_mu)
      throw InconsistencyError("w(E/F_1) = " + std::to_string(w_f1) + " but w(E/K(mu_p)) = " + std::to_string(w_mu));
  }
  if (rank_k && (*rank_k % 2) != parity_of_sign(w_k))
    throw HypothesisError("supplied rank over K has parity different from w(E/K)");

  const std::string pp = std::to_string(p);
  const std::vector<std::string> assumptions = {
      "Selmer parity agrees with the root number over K and K(mu_" + pp + ")",
      "K(m^(1/p^n)) and K(mu_p^n, m^(1/p^n)) have maximal degree"};
  std::vector<LadderLayer> out;
  long bound_l = rank_k ? *rank_k : parity_of_sign(w_k);
  Integer bound_f = bound_l;
  int prev = w_k;
  for (int i = 0; i <= n; ++i) {
    LadderLayer layer;
    layer.n = i;
    layer.w_l = i == 0 ? w_k : root_number_radical(curve, p, m, i);
    layer.w_f = i == 0 ? w_k : w_mu;
    if (i >= 1) {
      // rk(L_i) - rk(L_{i-1}) is the multiplicity of Ind L_i - Ind L_{i-1}, irreducible of dimension p^i - p^{i-1}.
      if (layer.w_l != prev) {
        ++bound_l;
        bound_f += ipow(p, i) - ipow(p, i - 1);
      }
      // Gal(K(mu_p)/K) contributes a nontrivial character when the parities over K and K(mu_p) differ.
      if (i == 1 && w_mu != w_k) bound_f += 1;
    }
    prev = layer.w_l;
    layer.bound_l = bound_l;
    layer.bound_f = bound_f;
    const std::string li = i == 0 ? "K" : "L_" + std::to_string(i);
    const std::string fi = i == 0 ? "K" : "F_" + std::to_string(i);
    layer.verdict_l = make_verdict("rk_" + pp + "(E/" + li + ")", std::nullopt, parity_of_sign(layer.w_l), assumptions);
    layer.verdict_f = make_verdict("rk_" + pp + "(E/" + fi + ")", std::nullopt, parity_of_sign(layer.w_f), assumptions);
    out.push_back(layer);
  }
  return out;
}

DihedralReport dihedral_parity(const TowerDescription& tower, int p, std::optional<int> rank_m_parity) {
  if (p == 2) throw std::invalid_argument("dihedral_parity: p = 2 is not supported");
  require_odd_prime(p, "dihedral_parity");
  if (tower.family != TowerFamily::dihedral) throw std::invalid_argument("dihedral_parity: tower is not dihedral");
  const Group& G = *tower.group;
  if (static_cast<long>(G.order()) != 2L * p || G.element_order(G.named("g")) != p)
    throw std::invalid_argument("dihedral_parity: group is not D_2p");
  DihedralReport r;
  const Subgroup cg = tower.field_group('M');
  long ord = 0, s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < tower.places.size(); ++i) {
    const auto& tp = tower.places[i];
    PlaceContribution pc;
    pc.place = tp.data.place;
    pc.label = "-";
    const auto in_m = tower.decomposition(i, 'M');
    pc.ord_quotient = field_terms(tp.data, tower.decomposition(i, 'F'), p).c_ord - field_terms(tp.data, in_m, p).c_ord;
    ord += pc.ord_quotient;
    r.places.push_back(pc);
    if (!tp.data.finite() || meet(G, tp.inertia, cg).order() == 1) continue;
    for (const auto& pr : in_m.profiles) {
      const LocalCurveData w = base_change(tp.data, pr.e, pr.f);
      if (w.reduction == Reduction::split_mult) s1 += pr.count;
      if (!w.semistable() && w.residue_char == p && ord_p(w.residue_size, Integer(p)) % 2 == 1 &&
          (static_cast<long>(p) * w.ord_delta / 12) % 2 == 1)
        s2 += pr.count;
    }
  }
  const int tam = static_cast<int>(((ord % 2) + 2) % 2);
  const std::string pp = std::to_string(p);
  r.verdict = make_verdict("rk(E/M)+(2/" + std::to_string(p - 1) + ")(rk(E/L)-rk(E/K))", tam, std::nullopt,
                           {"p^inf-Selmer ranks (" + pp + "-primary)"});
  if (p > 3) {
    r.s1 = s1;
    r.s2 = s2;
    if ((s1 + s2) % 2 != tam)
      throw InconsistencyError("|S1| + |S2| = " + std::to_string(s1 + s2) + " disagrees with ord_p C(F)/C(M)");
    r.verdict.notes.push_back("|S1| = " + std::to_string(s1) + ", |S2| = " + std::to_string(s2));
    if (rank_m_parity && (*rank_m_parity + s1 + s2) % 2 == 1)
      r.rank_jump = "rk_" + pp + "(E/L) >= rk_" + pp + "(E/K) + " + std::to_string((p - 1) / 2);
  } else if (rank_m_parity && (*rank_m_parity + tam) % 2 == 1) {
    r.rank_jump = "rk_" + pp + "(E/L) >= rk_" + pp + "(E/K) + " + std::to_string((p - 1) / 2);
  }
  if (r.rank_jump) r.verdict.notes.push_back(*r.rank_jump);
  return r;
}

S3Report s3_theorem_parity(const TowerDescription& tower) {
  if (tower.group->order() != 6) throw std::invalid_argument("s3_theorem_parity: group is not S3");
  S3Report r;
  r.borel = borel_parity(tower, 3);
  std::vector<LocalCurveData> base;
  for (const auto& tp : tower.places) base.push_back(tp.data);
  const int w = global_root_number(base);
  r.selmer_combination = make_verdict("rk3(E/K)+(rk3(E/M)-rk2(E/M))+(rk3(E/L)-rk2(E/L))", std::nullopt,
                                      parity_of_sign(w), {"rk2 terms are external inputs"});
  return r;
}

bool height_block_identity_check(const QMatrix& h) {
  if (!h.square()) throw std::invalid_argument("height_block_identity_check: H must be square");
  const std::size_t n = h.rows();
  QMatrix b(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      b(i, j) = 2 * h(i, j);
      b(n + i, n + j) = 2 * h(i, j);
      b(i, n + j) = -h(i, j);
      b(n + i, j) = -h(i, j);
    }
  const Rational d = determinant(h);
  return determinant(b) == Rational(ipow(3, n)) * d * d;
}

}  // namespace brauer
