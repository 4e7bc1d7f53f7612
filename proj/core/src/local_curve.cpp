#include "brauer/local_curve.hpp"

#include "brauer/square_class.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace brauer {

std::string to_string(PlaceKind k) {
  switch (k) {
    case PlaceKind::finite: return "finite";
    case PlaceKind::real: return "real";
    case PlaceKind::complex: return "complex";
  }
  return "?";
}

std::string to_string(Reduction r) {
  switch (r) {
    case Reduction::good: return "good";
    case Reduction::split_mult: return "split_mult";
    case Reduction::nonsplit_mult: return "nonsplit_mult";
    case Reduction::additive_pot_mult: return "additive_pot_mult";
    case Reduction::additive_pot_good: return "additive_pot_good";
  }
  return "?";
}

PlaceKind parse_place_kind(const std::string& s) {
  for (auto k : {PlaceKind::finite, PlaceKind::real, PlaceKind::complex})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown place kind '" + s + "' (finite, real, complex)");
}

Reduction parse_reduction(const std::string& s) {
  for (auto r : {Reduction::good, Reduction::split_mult, Reduction::nonsplit_mult, Reduction::additive_pot_mult,
                 Reduction::additive_pot_good})
    if (to_string(r) == s) return r;
  throw std::invalid_argument("unknown reduction type '" + s +
                              "' (good, split_mult, nonsplit_mult, additive_pot_mult, additive_pot_good)");
}

std::string potentially_good_kodaira(long ord_delta) {
  switch (ord_delta) {
    case 0: return "I0";
    case 2: return "II";
    case 3: return "III";
    case 4: return "IV";
    case 6: return "I0*";
    case 8: return "IV*";
    case 9: return "III*";
    case 10: return "II*";
  }
  throw std::invalid_argument("ord(Delta) = " + std::to_string(ord_delta) +
                              " is not potentially good in residue characteristic >= 5");
}

std::string LocalCurveData::kodaira() const {
  if (!finite()) return "";
  switch (reduction) {
    case Reduction::good: return "I0";
    case Reduction::split_mult:
    case Reduction::nonsplit_mult: return "I" + std::to_string(ord_delta);
    case Reduction::additive_pot_mult:
      return residue_char >= 5 ? "I" + std::to_string(ord_delta - 6) + "*" : "";
    case Reduction::additive_pot_good:
      return residue_char >= 5 ? potentially_good_kodaira(ord_delta) : "";
  }
  return "";
}

void LocalCurveData::validate() const {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("place '" + place + "': " + what);
  };
  if (w_override && *w_override != 1 && *w_override != -1) fail("w_override must be 1 or -1");
  if (!finite()) {
    if (reduction != Reduction::good || ord_delta != 0 || tamagawa != 1 || omega_disc != 0)
      fail("archimedean places carry no reduction data");
    return;
  }
  if (residue_char < 2 || !is_prime(Integer(residue_char))) fail("residue characteristic must be prime");
  {
    Integer q = residue_size;
    if (q < residue_char) fail("residue field size must be a power of the residue characteristic");
    while (q % residue_char == 0) q /= residue_char;
    if (q != 1) fail("residue field size must be a power of the residue characteristic");
  }
  if (ord_delta < 0) fail("ord_delta must be nonnegative");
  if (tamagawa < 1) fail("Tamagawa number must be positive");
  switch (reduction) {
    case Reduction::good:
      if (ord_delta != 0 || tamagawa != 1) fail("good reduction needs ord_delta = 0 and c = 1");
      break;
    case Reduction::split_mult:
      if (ord_delta < 1 || tamagawa != ord_delta) fail("split multiplicative reduction needs c = ord_delta >= 1");
      break;
    case Reduction::nonsplit_mult:
      if (ord_delta < 1 || (tamagawa != 1 && tamagawa != 2)) fail("non-split multiplicative reduction needs c in {1, 2}");
      break;
    case Reduction::additive_pot_mult:
      if (residue_char >= 5) {
        if (ord_delta < 7) fail("type I_n^* needs ord_delta = n + 6 with n >= 1");
        if (tamagawa != 2 && tamagawa != 4) fail("type I_n^* has c in {2, 4}");
        if ((tamagawa == 4) != hints.cstar_square) fail("Tamagawa number disagrees with the I_n^* hint");
      }
      break;
    case Reduction::additive_pot_good:
      if (residue_char >= 5) {
        const std::string k = potentially_good_kodaira(ord_delta);
        if (k == "I0") fail("ord_delta = 0 is good reduction");
        long expected = 1;
        if (k == "III" || k == "III*") expected = 2;
        if (k == "IV" || k == "IV*") expected = hints.a6_square ? 3 : 1;
        if (k == "I0*") expected = 1 + hints.cubic_roots;
        if (tamagawa != expected)
          fail("type " + k + " with these residue data has c = " + std::to_string(expected));
      }
      break;
  }
}

LocalCurveData real_place() {
  LocalCurveData d;
  d.place = "inf";
  d.kind = PlaceKind::real;
  return d;
}

LocalCurveData complex_place() {
  LocalCurveData d;
  d.place = "inf";
  d.kind = PlaceKind::complex;
  return d;
}

LocalCurveData finite_place(long ell, Integer q, Reduction r, long ord_delta, long tamagawa, long omega_disc) {
  LocalCurveData d;
  d.place = std::to_string(ell);
  d.residue_char = ell;
  d.residue_size = std::move(q);
  d.reduction = r;
  d.ord_delta = ord_delta;
  d.tamagawa = tamagawa;
  d.omega_disc = omega_disc;
  if (r == Reduction::additive_pot_mult) d.hints.cstar_square = tamagawa == 4;
  if (r == Reduction::additive_pot_good && ell >= 5) {
    if (ord_delta == 4 || ord_delta == 8) d.hints.a6_square = tamagawa == 3;
    if (ord_delta == 6) d.hints.cubic_roots = static_cast<int>(tamagawa - 1);
  }
  return d;
}

bool root_number_supported(const LocalCurveData& d) {
  if (!d.finite()) return true;
  if (d.reduction == Reduction::additive_pot_mult) return d.residue_char >= 3;
  if (d.reduction == Reduction::additive_pot_good) return d.residue_char >= 5;
  return true;
}

int local_root_number(const LocalCurveData& d) {
  if (!d.finite()) return -1;
  switch (d.reduction) {
    case Reduction::split_mult: return -1;
    case Reduction::good:
    case Reduction::nonsplit_mult: return 1;
    case Reduction::additive_pot_mult:
      if (d.residue_char < 3)
        throw UnsupportedCase("place '" + d.place + "': additive at residue char 2: supply w_override");
      return d.residue_size % 4 == 1 ? 1 : -1;
    case Reduction::additive_pot_good: {
      if (d.residue_char < 5)
        throw UnsupportedCase("place '" + d.place + "': additive at residue char " +
                              std::to_string(d.residue_char) + ": supply w_override");
      Integer k = Integer(d.ord_delta * d.residue_size) / 12;
      return k % 2 == 0 ? 1 : -1;
    }
  }
  return 1;
}

int effective_root_number(const LocalCurveData& d) {
  if (d.w_override) return *d.w_override;
  return local_root_number(d);
}

int global_root_number(const std::vector<LocalCurveData>& places) {
  int w = 1;
  for (const auto& d : places) w *= effective_root_number(d);
  return w;
}

namespace {

void check_degrees(long e, long f) {
  if (e < 1 || f < 1) throw std::invalid_argument("base change: e and f must be positive");
}

LocalCurveData archimedean_change(const LocalCurveData& d, long e) {
  LocalCurveData out = d;
  out.w_override.reset();
  if (d.kind == PlaceKind::real && e == 2) out.kind = PlaceKind::complex;
  else if (e != 1) throw std::invalid_argument("base change: archimedean ramification index is 1 or 2");
  return out;
}

Integer power(const Integer& q, long f) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(f));
  return r;
}

}  // namespace

LocalCurveData base_change_semistable(const LocalCurveData& d, long e, long f) {
  check_degrees(e, f);
  if (!d.finite()) return archimedean_change(d, e);
  if (!d.semistable())
    throw UnsupportedCase("place '" + d.place + "': additive reduction; supply the data over the extension");
  LocalCurveData out = d;
  if (e != 1 || f != 1) out.w_override.reset();
  out.residue_size = power(d.residue_size, f);
  out.omega_disc = e * d.omega_disc;
  switch (d.reduction) {
    case Reduction::good: break;
    case Reduction::split_mult:
      out.ord_delta = e * d.ord_delta;
      out.tamagawa = out.ord_delta;
      break;
    case Reduction::nonsplit_mult:
      out.ord_delta = e * d.ord_delta;
      if (f % 2 == 0) {
        out.reduction = Reduction::split_mult;
        out.tamagawa = out.ord_delta;
      } else {
        out.tamagawa = out.ord_delta % 2 == 0 ? 2 : 1;
      }
      break;
    default: break;
  }
  return out;
}

LocalCurveData base_change_additive(const LocalCurveData& d, long e, long f) {
  check_degrees(e, f);
  if (d.semistable()) throw std::invalid_argument("base_change_additive: reduction is not additive");
  if (d.residue_char < 5)
    throw UnsupportedCase("place '" + d.place + "': additive base change at residue char " +
                          std::to_string(d.residue_char) + " is not modelled; supply the data over the extension");
  LocalCurveData out = d;
  if (e != 1 || f != 1) out.w_override.reset();
  out.residue_size = power(d.residue_size, f);
  const bool f_even = f % 2 == 0;
  AdditiveHints& h = out.hints;

  if (d.reduction == Reduction::additive_pot_mult) {
    const long n = d.ord_delta - 6;
    if (e % 2 == 1) {
      out.ord_delta = e * n + 6;
      h.cstar_square = d.hints.cstar_square || f_even;
      out.tamagawa = h.cstar_square ? 4 : 2;
      out.omega_disc = e * d.omega_disc + (e - 1) / 2;
    } else {
      const bool split = d.hints.twist_square || f_even;
      out.reduction = split ? Reduction::split_mult : Reduction::nonsplit_mult;
      out.ord_delta = e * n;
      out.tamagawa = split ? out.ord_delta : (out.ord_delta % 2 == 0 ? 2 : 1);
      out.omega_disc = e * d.omega_disc + e / 2;
      out.hints = {};
    }
    h.twist_square = d.hints.twist_square || f_even;
    return out;
  }

  const long o = d.ord_delta;
  const long scaled = e * o;
  const long fresh = scaled % 12;
  out.omega_disc = e * d.omega_disc + (scaled - fresh) / 12;
  out.ord_delta = fresh;
  if (fresh == 0) {
    out.reduction = Reduction::good;
    out.tamagawa = 1;
    out.hints = {};
    return out;
  }
  const Integer q = d.residue_size;
  const Integer qf = out.residue_size;
  h.a6_square = d.hints.a6_square || f_even;
  h.minus_a4_square = d.hints.minus_a4_square || f_even;
  h.a6_cube = d.hints.a6_cube || f % 3 == 0 || q % 3 == 2;
  switch (fresh) {
    case 2:
    case 10: out.tamagawa = 1; break;
    case 3:
    case 9: out.tamagawa = 2; break;
    case 4:
    case 8: out.tamagawa = h.a6_square ? 3 : 1; break;
    case 6: {
      int roots = 0;
      if (o == 6) {
        // Same reduced cubic over a larger residue field.
        if (d.hints.cubic_roots == 3) roots = 3;
        else if (d.hints.cubic_roots == 1) roots = f_even ? 3 : 1;
        else roots = f % 3 == 0 ? 3 : 0;
      } else if (o == 2 || o == 10) {
        // T^3 + b: one root when cubing is bijective, else 0 or 3.
        if (qf % 3 == 2) roots = 1;
        else roots = h.a6_cube ? 3 : 0;
      } else {
        // T (T^2 + a).
        roots = h.minus_a4_square ? 3 : 1;
      }
      h.cubic_roots = roots;
      out.tamagawa = 1 + roots;
      break;
    }
    default: throw std::logic_error("base_change_additive: impossible ord(Delta)");
  }
  return out;
}

LocalCurveData base_change(const LocalCurveData& d, long e, long f) {
  if (!d.finite() || d.semistable()) return base_change_semistable(d, e, f);
  return base_change_additive(d, e, f);
}

long c_ord(const LocalCurveData& d, const Integer& p) {
  if (!d.finite()) return 0;
  return ord_p(Integer(d.tamagawa), p) - d.omega_disc * ord_p(d.residue_size, p);
}

Rational c_value(const LocalCurveData& d) {
  if (!d.finite()) return 1;
  Rational c = d.tamagawa;
  Integer qd = power(d.residue_size, std::labs(d.omega_disc));
  if (d.omega_disc >= 0) return c / qd;
  return c * qd;
}

int c_quotient_ord_parity(const Integer& p, const std::vector<LocalCurveData>& numerator,
                          const std::vector<LocalCurveData>& denominator) {
  long total = 0;
  for (const auto& d : numerator) total += c_ord(d, p);
  for (const auto& d : denominator) total -= c_ord(d, p);
  return static_cast<int>(((total % 2) + 2) % 2);
}

long PlaceDecomposition::degree() const {
  long n = 0;
  for (const auto& pr : profiles) n += pr.e * pr.f * pr.count;
  return n;
}

long PlaceDecomposition::places() const {
  long n = 0;
  for (const auto& pr : profiles) n += pr.count;
  return n;
}

std::string to_string(const PlaceDecomposition& d) {
  std::string s;
  for (const auto& pr : d.profiles) {
    if (!s.empty()) s += " ";
    s += "(e=" + std::to_string(pr.e) + ",f=" + std::to_string(pr.f) + ")x" + std::to_string(pr.count);
  }
  return s;
}

PlaceDecomposition decompose_place(const Group& g, const Subgroup& h, const Subgroup& decomposition,
                                   const Subgroup& inertia) {
  CosetSpace cs(g, h);
  const std::size_t n = cs.size();
  auto orbit = [&](int start, const Subgroup& s) {
    std::vector<int> seen{start};
    std::vector<bool> mark(n, false);
    mark[start] = true;
    for (std::size_t k = 0; k < seen.size(); ++k)
      for (int x : s.generators.empty() ? s.elements : s.generators) {
        int y = cs.act(x, seen[k]);
        if (!mark[y]) {
          mark[y] = true;
          seen.push_back(y);
        }
      }
    return seen;
  };
  std::map<std::pair<long, long>, long> counts;
  std::vector<bool> done(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    if (done[c]) continue;
    auto o = orbit(static_cast<int>(c), decomposition);
    for (int x : o) done[x] = true;
    const long e = static_cast<long>(orbit(static_cast<int>(c), inertia).size());
    ++counts[{e, static_cast<long>(o.size()) / e}];
  }
  PlaceDecomposition out;
  for (const auto& [ef, k] : counts) out.profiles.push_back({ef.first, ef.second, k});
  return out;
}

std::vector<LocalCurveData> primes_above(const LocalCurveData& v, const PlaceDecomposition& dec) {
  std::vector<LocalCurveData> out;
  for (const auto& pr : dec.profiles) {
    LocalCurveData w = base_change(v, pr.e, pr.f);
    for (long k = 0; k < pr.count; ++k) out.push_back(w);
  }
  return out;
}

FieldTerms field_terms(const LocalCurveData& v, const PlaceDecomposition& dec, const Integer& p) {
  FieldTerms t;
  t.w = 1;
  for (const auto& pr : dec.profiles) {
    LocalCurveData w = base_change(v, pr.e, pr.f);
    if (pr.e == 1 && pr.f == 1) w.w_override = v.w_override;
    t.c_ord += pr.count * c_ord(w, p);
    Rational cv = c_value(w);
    for (long k = 0; k < pr.count; ++k) t.c_value *= cv;
    if (t.w) {
      if (w.w_override || root_number_supported(w)) {
        int s = effective_root_number(w);
        if (pr.count % 2 == 1) *t.w *= s;
      } else {
        t.w.reset();
      }
    }
  }
  return t;
}

namespace {

bool same_subgroup(const Group& g, const std::vector<int>& gens, const Subgroup& target) {
  return g.closure(gens).elements == target.elements;
}

std::vector<int> with(std::vector<int> gens, int x) {
  gens.push_back(x);
  return gens;
}

Subgroup intersect(const Group& g, const Subgroup& a, const Subgroup& b) {
  std::vector<int> common;
  for (int x : a.elements)
    if (b.contains(x)) common.push_back(x);
  return g.closure(common);
}

}  // namespace

void validate_local_galois(const Group& g, const Subgroup& d, const Subgroup& i, const LocalCurveData& v) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("place '" + v.place + "': " + what);
  };
  for (int x : i.elements)
    if (!d.contains(x)) fail("inertia group is not contained in the decomposition group");
  if (!v.finite()) {
    if (d.elements != i.elements || d.order() > 2) fail("archimedean decomposition group must have order 1 or 2");
    if (v.kind == PlaceKind::complex && d.order() != 1) fail("complex place with nontrivial decomposition group");
    return;
  }
  for (int x : d.elements)
    if (g.conjugate(i, x).elements != i.elements) fail("inertia group is not normal in the decomposition group");
  const long ell = v.residue_char;
  std::vector<int> wild;
  for (int x : i.elements) {
    long o = g.element_order(x);
    while (o % ell == 0) o /= ell;
    if (o == 1) wild.push_back(x);
  }
  const Subgroup p = g.closure(wild);
  if (p.order() != wild.size()) fail("wild inertia is not a subgroup");
  // The quotient I/P is cyclic, generated by some element.
  bool tame_cyclic = false;
  int tame_gen = 0;
  for (int x : i.elements)
    if (same_subgroup(g, with(p.elements, x), i)) {
      tame_cyclic = true;
      tame_gen = x;
      break;
    }
  if (!tame_cyclic) fail("tame inertia quotient is not cyclic");
  bool quotient_cyclic = false;
  for (int x : d.elements) {
    if (!same_subgroup(g, with(i.elements, x), d)) continue;
    if (p.order() == 1) {
      // Frobenius raises tame inertia to the q-th power.
      const long n = g.element_order(tame_gen);
      const long s = mpz_fdiv_ui(v.residue_size.get_mpz_t(), static_cast<unsigned long>(n));
      if (g.conj(x, tame_gen) != g.power(tame_gen, s)) continue;
    }
    quotient_cyclic = true;
    break;
  }
  if (!quotient_cyclic)
    fail(p.order() == 1 ? "no Frobenius element acts on inertia by the q-th power"
                        : "decomposition group modulo inertia is not cyclic");
}

std::string classify_borel_place(const Group& g, const BorelScenario& s) {
  validate_local_galois(g, s.decomposition, s.inertia, s.data);
  const Subgroup unipotent = g.closure({g.named("g")});
  if (intersect(g, s.decomposition, unipotent).order() == 1) return "1";
  if (intersect(g, s.inertia, unipotent).order() == 1) return "2";
  if (s.data.semistable()) return "3";
  const long ell = s.data.residue_char;
  if (ell == 2 || ell == 3)
    throw HypothesisError("place '" + s.data.place + "': v | 6 ramifies in L/K and E is not semistable there");
  if (ell != s.p) {
    if (s.p != 3) return "4a";
    return (s.data.reduction == Reduction::additive_pot_good && (s.data.ord_delta == 4 || s.data.ord_delta == 8))
               ? "4c"
               : "4b";
  }
  const PlaceDecomposition in_m = decompose_place(g, unipotent, s.decomposition, s.inertia);
  const auto& pr = in_m.profiles.front();
  return base_change(s.data, pr.e, pr.f).semistable() ? "5a" : "5b";
}

EquivalenceResult tamagawa_root_equivalence(const Group& g, const BorelScenario& s) {
  EquivalenceResult r;
  r.label = classify_borel_place(g, s);
  const Subgroup unipotent = g.closure({g.named("g")});
  const Subgroup torus = g.closure({g.named("h")});
  r.in_k = decompose_place(g, g.whole(), s.decomposition, s.inertia);
  r.in_m = decompose_place(g, unipotent, s.decomposition, s.inertia);
  r.in_l = decompose_place(g, torus, s.decomposition, s.inertia);
  r.in_f = decompose_place(g, g.trivial(), s.decomposition, s.inertia);
  const Integer p = s.p;
  FieldTerms k = field_terms(s.data, r.in_k, p), m = field_terms(s.data, r.in_m, p),
             l = field_terms(s.data, r.in_l, p), f = field_terms(s.data, r.in_f, p);
  if (!k.w || !m.w || !l.w)
    throw UnsupportedCase("place '" + s.data.place + "': local root numbers above v are not available");
  r.ord_quotient = f.c_ord + (s.p - 1) * k.c_ord - m.c_ord - (s.p - 1) * l.c_ord;
  r.root_product = *k.w * *m.w * *l.w;
  r.agree = (r.ord_quotient % 2 == 0) == (r.root_product == 1);
  return r;
}

bool tamagawa_root_equivalence_check(const Group& g, const BorelScenario& s) {
  return tamagawa_root_equivalence(g, s).agree;
}

namespace {

std::vector<long> small_primes(long bound) {
  std::vector<long> out;
  for (long n = 2; n <= bound; ++n) {
    bool prime = true;
    for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) prime = false;
    if (prime) out.push_back(n);
  }
  return out;
}

std::vector<LocalCurveData> curve_grid(long ell, const Integer& q, int p) {
  std::vector<LocalCurveData> out;
  out.push_back(finite_place(ell, q, Reduction::good, 0, 1));
  out.push_back(finite_place(ell, q, Reduction::good, 0, 1, 1));
  for (long n : {1L, 2L, static_cast<long>(p)}) out.push_back(finite_place(ell, q, Reduction::split_mult, n, n));
  out.push_back(finite_place(ell, q, Reduction::split_mult, 1, 1, 1));
  for (long n : {1L, 2L}) out.push_back(finite_place(ell, q, Reduction::nonsplit_mult, n, n % 2 == 0 ? 2 : 1));
  if (ell < 5) return out;
  for (long n : {1L, 2L})
    for (bool tw : {false, true}) {
      auto d = finite_place(ell, q, Reduction::additive_pot_mult, n + 6, 2);
      d.hints.twist_square = tw;
      out.push_back(d);
    }
  for (long o : {2L, 3L, 4L, 6L, 8L, 9L, 10L}) {
    const std::string k = potentially_good_kodaira(o);
    if (o == 4 || o == 8) {
      for (long c : {1L, 3L}) out.push_back(finite_place(ell, q, Reduction::additive_pot_good, o, c));
    } else if (o == 6) {
      for (long c : {1L, 2L, 4L}) out.push_back(finite_place(ell, q, Reduction::additive_pot_good, o, c));
    } else {
      out.push_back(finite_place(ell, q, Reduction::additive_pot_good, o, (o == 3 || o == 9) ? 2 : 1));
    }
  }
  out.push_back(finite_place(ell, q, Reduction::additive_pot_good, 2, 1, 1));
  auto cube = finite_place(ell, q, Reduction::additive_pot_good, 2, 1);
  cube.hints.a6_cube = true;
  out.push_back(cube);
  return out;
}

}  // namespace

std::vector<BorelScenario> generate_borel_scenarios(const Group& g) {
  if (g.name().rfind("Borel:", 0) != 0) throw std::invalid_argument("generate_borel_scenarios: Borel group expected");
  const int p = std::stoi(g.name().substr(6));
  const Subgroup unipotent = g.closure({g.named("g")});
  const auto primes = small_primes(400);

  // (D, I, q mod |I|) up to the choice of class representative for I.
  struct LocalGroup {
    Subgroup d, i;
    std::vector<long> residues;  // admissible q mod |I| (tame), empty for wild
    bool wild = false;
  };
  std::vector<LocalGroup> locals;
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  for (const auto& cls : g.subgroup_classes()) {
    const Subgroup& i = cls.representative;
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (g.conjugate(i, static_cast<int>(x)).elements != i.elements) continue;
      Subgroup d = g.closure(with(i.elements, static_cast<int>(x)));
      if (!seen.insert({d.elements, i.elements}).second) continue;
      LocalGroup lg{d, i, {}, false};
      bool contains_unipotent = true;
      for (int u : unipotent.elements)
        if (!i.contains(u)) contains_unipotent = false;
      int gen = -1;
      for (int y : i.elements)
        if (static_cast<std::size_t>(g.element_order(y)) == i.order()) gen = y;
      if (gen >= 0) {
        const long n = static_cast<long>(i.order());
        std::set<long> res;
        for (int phi : d.elements) {
          if (!same_subgroup(g, with(i.elements, phi), d)) continue;
          for (long s = 0; s < n; ++s)
            if (std::gcd(s, n) == 1 && g.conj(phi, gen) == g.power(gen, s)) res.insert(s);
        }
        if (n == 1) res = {0};
        lg.residues.assign(res.begin(), res.end());
        if (!lg.residues.empty()) locals.push_back(lg);
      }
      if (contains_unipotent) {
        LocalGroup w{d, i, {}, true};
        locals.push_back(w);
      }
    }
  }

  std::vector<BorelScenario> out;
  auto add = [&](const LocalCurveData& data, const LocalGroup& lg) {
    BorelScenario s{p, data, lg.d, lg.i, ""};
    try {
      s.label = classify_borel_place(g, s);
    } catch (const std::invalid_argument&) {
      return;
    }
    if (!data.semistable() && data.residue_char < 5) return;
    out.push_back(std::move(s));
  };

  for (const auto& lg : locals) {
    if (lg.wild) {
      for (long f : {1L, 2L}) {
        Integer q = 1;
        for (long k = 0; k < f; ++k) q *= p;
        for (const auto& d : curve_grid(p, q, p)) add(d, lg);
      }
      continue;
    }
    if (lg.d.elements == lg.i.elements && lg.i.order() <= 2) {
      add(lg.i.order() == 1 ? complex_place() : real_place(), lg);
      if (lg.i.order() == 1) add(real_place(), lg);
    }
    const long n = static_cast<long>(lg.i.order());
    for (long s : lg.residues) {
      // Residue fields: two primes, one square, then 2, 3 and p when tame.
      std::vector<std::pair<long, long>> fields;
      int found = 0;
      for (long ell : primes) {
        if (ell < 5 || ell == p || n % ell == 0) continue;
        if (n == 1 || ell % n == s) {
          fields.push_back({ell, 1});
          if (++found == 2) break;
        }
      }
      for (long ell : primes) {
        if (ell < 5 || ell == p || n % ell == 0) continue;
        if (n == 1 || (ell * ell) % n == s) {
          fields.push_back({ell, 2});
          break;
        }
      }
      for (long ell : {2L, 3L, static_cast<long>(p)}) {
        if (n % ell == 0) continue;
        for (long f : {1L, 2L}) {
          long qq = f == 1 ? ell : ell * ell;
          if (n == 1 || qq % n == s) {
            fields.push_back({ell, f});
            break;
          }
        }
      }
      std::sort(fields.begin(), fields.end());
      fields.erase(std::unique(fields.begin(), fields.end()), fields.end());
      for (const auto& [ell, f] : fields) {
        Integer q = f == 1 ? Integer(ell) : Integer(ell * ell);
        for (const auto& d : curve_grid(ell, q, p)) add(d, lg);
      }
    }
  }
  return out;
}

}  // namespace brauer
