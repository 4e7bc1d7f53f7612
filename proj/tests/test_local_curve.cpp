#include <doctest.h>

#include "brauer/local_curve.hpp"
#include "brauer/square_class.hpp"

#include <map>
#include <random>
#include <set>

using namespace brauer;

namespace {

LocalCurveData pot_good(long ell, const Integer& q, long ord) {
  long c = (ord == 3 || ord == 9) ? 2 : (ord == 6 ? 2 : 1);
  return finite_place(ell, q, Reduction::additive_pot_good, ord, c);
}

int affine(const Group& g, int p, int a, int b) {
  Perm x(p);
  for (int i = 0; i < p; ++i) x[i] = static_cast<int>((static_cast<long>(a) * i + b) % p);
  return g.index_of(x);
}

// (-1)^{floor(ord q / 12)} evaluated with machine integers.
int case4_oracle(long ord, long q) { return ((ord * q) / 12) % 2 == 0 ? 1 : -1; }

}  // namespace

TEST_CASE("local root numbers") {
  CHECK(local_root_number(real_place()) == -1);
  CHECK(local_root_number(complex_place()) == -1);
  CHECK(local_root_number(pot_good(5, 5, 6)) == 1);
  CHECK(local_root_number(finite_place(13, 13, Reduction::additive_pot_mult, 7, 2)) == 1);
  CHECK(local_root_number(finite_place(7, 7, Reduction::additive_pot_mult, 7, 2)) == -1);
  CHECK(local_root_number(finite_place(3, 3, Reduction::good, 0, 1)) == 1);
  CHECK(local_root_number(finite_place(11, 11, Reduction::split_mult, 1, 1)) == -1);
  CHECK(local_root_number(finite_place(11, 11, Reduction::nonsplit_mult, 1, 1)) == 1);
  CHECK(local_root_number(pot_good(7, 7, 3)) == -1);
  CHECK_THROWS_AS(local_root_number(finite_place(2, 2, Reduction::additive_pot_good, 4, 1)), UnsupportedCase);
  CHECK_THROWS_AS(local_root_number(finite_place(3, 3, Reduction::additive_pot_good, 3, 2)), UnsupportedCase);
  CHECK_THROWS_AS(local_root_number(finite_place(2, 4, Reduction::additive_pot_mult, 8, 2)), UnsupportedCase);
  CHECK(local_root_number(finite_place(3, 3, Reduction::additive_pot_mult, 7, 2)) == -1);
}

TEST_CASE("global root numbers") {
  CHECK(global_root_number({}) == 1);
  auto x1_11 = std::vector<LocalCurveData>{real_place(), finite_place(11, 11, Reduction::split_mult, 1, 1),
                                           finite_place(2, 2, Reduction::good, 0, 1)};
  CHECK(global_root_number(x1_11) == 1);

  auto seven = pot_good(7, 7, 3);
  seven.w_override = -1;
  CHECK(global_root_number({real_place(), seven, finite_place(3, 3, Reduction::good, 0, 1)}) == 1);
  CHECK(local_root_number(pot_good(7, 7, 3)) == *seven.w_override);

  auto two = finite_place(2, 2, Reduction::additive_pot_good, 4, 1);
  CHECK_THROWS_AS(global_root_number({real_place(), two}), UnsupportedCase);
  two.w_override = 1;
  CHECK(global_root_number({real_place(), two}) == -1);
}

TEST_CASE("global root number is multiplicative over disjoint unions") {
  std::mt19937 rng(7);
  std::vector<LocalCurveData> pool = {real_place(), complex_place(), finite_place(11, 11, Reduction::split_mult, 3, 3),
                                      finite_place(5, 25, Reduction::nonsplit_mult, 2, 2), pot_good(7, 7, 3),
                                      pot_good(13, 13, 8), finite_place(17, 17, Reduction::additive_pot_mult, 8, 2)};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), len(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LocalCurveData> a, b;
    for (std::size_t k = len(rng); k > 0; --k) a.push_back(pool[pick(rng)]);
    for (std::size_t k = len(rng); k > 0; --k) b.push_back(pool[pick(rng)]);
    std::vector<LocalCurveData> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    CHECK(global_root_number(ab) == global_root_number(a) * global_root_number(b));
  }
}

TEST_CASE("semistable base change") {
  auto s = base_change_semistable(finite_place(11, 11, Reduction::split_mult, 5, 5), 3, 1);
  CHECK(s.reduction == Reduction::split_mult);
  CHECK(s.ord_delta == 15);
  CHECK(s.tamagawa == 15);

  auto n = base_change_semistable(finite_place(7, 7, Reduction::nonsplit_mult, 1, 1), 1, 2);
  CHECK(n.reduction == Reduction::split_mult);
  CHECK(n.tamagawa == 1);
  CHECK(n.residue_size == 49);

  auto n3 = base_change_semistable(finite_place(7, 7, Reduction::nonsplit_mult, 1, 1), 2, 3);
  CHECK(n3.reduction == Reduction::nonsplit_mult);
  CHECK(n3.tamagawa == 2);

  auto g = base_change_semistable(finite_place(5, 5, Reduction::good, 0, 1), 4, 2);
  CHECK(g.reduction == Reduction::good);
  CHECK(g.tamagawa == 1);
  CHECK_THROWS_AS(base_change_semistable(pot_good(7, 7, 3), 3, 1), UnsupportedCase);
  CHECK(base_change(real_place(), 2, 1).kind == PlaceKind::complex);
}

TEST_CASE("base change composes") {
  std::vector<LocalCurveData> data = {
      finite_place(11, 11, Reduction::split_mult, 2, 2), finite_place(11, 11, Reduction::nonsplit_mult, 3, 1),
      finite_place(5, 5, Reduction::good, 0, 1, 2),      finite_place(7, 7, Reduction::additive_pot_mult, 9, 4),
      pot_good(13, 13, 2),                               pot_good(13, 13, 3),
      pot_good(7, 7, 9),                                 finite_place(7, 7, Reduction::additive_pot_good, 4, 3)};
  for (const auto& d : data)
    for (long e1 : {1, 2, 5})
      for (long f1 : {1, 2})
        for (long e2 : {1, 3, 7})
          for (long f2 : {1, 3}) {
            auto twice = base_change(base_change(d, e1, f1), e2, f2);
            auto once = base_change(d, e1 * e2, f1 * f2);
            CAPTURE(d.kodaira());
            CAPTURE(e1);
            CAPTURE(e2);
            CHECK(twice.reduction == once.reduction);
            CHECK(twice.ord_delta == once.ord_delta);
            CHECK(twice.tamagawa == once.tamagawa);
            CHECK(twice.omega_disc == once.omega_disc);
            CHECK(twice.residue_size == once.residue_size);
          }
}

TEST_CASE("additive base change") {
  // II becomes I0* over a cubic ramified extension, with discrepancy 0.
  auto ii = base_change_additive(pot_good(5, 5, 2), 3, 1);
  CHECK(ii.kodaira() == "I0*");
  CHECK(ii.omega_disc == 0);
  // III over a quartic ramified extension has good reduction, omega scaled by 1.
  auto iii = base_change_additive(pot_good(7, 7, 3), 4, 1);
  CHECK(iii.reduction == Reduction::good);
  CHECK(iii.omega_disc == 1);
  // IV over degree 5: ord 20 -> IV*, discrepancy 1.
  auto iv = base_change_additive(finite_place(11, 11, Reduction::additive_pot_good, 4, 1), 5, 1);
  CHECK(iv.kodaira() == "IV*");
  CHECK(iv.omega_disc == 1);
  CHECK(iv.tamagawa == 1);
  CHECK(base_change_additive(finite_place(11, 11, Reduction::additive_pot_good, 4, 1), 1, 2).tamagawa == 3);
  // I1* under quadratic ramification is multiplicative.
  auto im = finite_place(7, 7, Reduction::additive_pot_mult, 7, 2);
  auto im2 = base_change_additive(im, 2, 1);
  CHECK(im2.reduction == Reduction::nonsplit_mult);
  CHECK(im2.ord_delta == 2);
  CHECK(im2.omega_disc == 1);
  im.hints.twist_square = true;
  CHECK(base_change_additive(im, 2, 1).reduction == Reduction::split_mult);
  CHECK(base_change_additive(im, 3, 1).kodaira() == "I3*");
  CHECK_THROWS_AS(base_change_additive(finite_place(3, 3, Reduction::additive_pot_good, 3, 2), 2, 1), UnsupportedCase);
}

TEST_CASE("case (4) depends only on ord and q mod 24") {
  // All prime powers up to 5000 prime to 6.
  std::vector<long> qs;
  for (long ell = 5; ell < 5000; ++ell) {
    if (!is_prime(Integer(ell))) continue;
    for (long q = ell; q < 5000; q *= ell) qs.push_back(q);
  }
  for (long ord : {2, 3, 4, 6, 8, 9, 10}) {
    std::map<long, std::set<int>> seen;
    for (long q : qs) {
      long ell = 0;
      for (long d = 5; d <= q; ++d)
        if (q % d == 0) {
          ell = d;
          break;
        }
      int w = local_root_number(pot_good(ell, q, ord));
      CHECK(w == case4_oracle(ord, q));
      seen[q % 24].insert(w);
    }
    CHECK(seen.size() == 8);
    for (const auto& [r, ws] : seen) CHECK(ws.size() == 1);
  }
}

TEST_CASE("root number stable under totally ramified steps of degree prime to 12") {
  for (long q = 5; q <= 97; ++q) {
    if (!is_prime(Integer(q))) continue;
    for (long ord : {2, 3, 4, 6, 8, 9, 10})
      for (long t : {5, 7, 11, 13}) {
        if (t == q) continue;
        auto d = pot_good(q, q, ord);
        CHECK(local_root_number(base_change_additive(d, t, 1)) == local_root_number(d));
      }
    for (long n : {1, 2, 3})
      for (long t : {5, 7, 11, 13}) {
        if (t == q) continue;
        auto d = finite_place(q, q, Reduction::additive_pot_mult, n + 6, 2);
        CHECK(local_root_number(base_change_additive(d, t, 1)) == local_root_number(d));
      }
  }
}

TEST_CASE("square residue field gives root number +1") {
  for (long ell = 3; ell < 200; ++ell) {
    if (!is_prime(Integer(ell))) continue;
    const Integer q = ell * ell;
    CHECK(local_root_number(finite_place(ell, q, Reduction::additive_pot_mult, 8, 2)) == 1);
    if (ell >= 5)
      for (long ord : {2, 3, 4, 6, 8, 9, 10}) CHECK(local_root_number(pot_good(ell, q, ord)) == 1);
  }
}

TEST_CASE("validation") {
  CHECK_NOTHROW(finite_place(11, 11, Reduction::split_mult, 1, 1).validate());
  CHECK_THROWS(finite_place(11, 11, Reduction::split_mult, 2, 1).validate());
  CHECK_THROWS(finite_place(11, 12, Reduction::good, 0, 1).validate());
  CHECK_THROWS(finite_place(11, 11, Reduction::good, 1, 1).validate());
  CHECK_THROWS(finite_place(11, 11, Reduction::nonsplit_mult, 3, 3).validate());
  CHECK_THROWS(finite_place(7, 7, Reduction::additive_pot_good, 5, 1).validate());
  CHECK_THROWS(finite_place(7, 7, Reduction::additive_pot_good, 3, 1).validate());
  CHECK_NOTHROW(finite_place(7, 49, Reduction::additive_pot_good, 3, 2).validate());
  auto r = real_place();
  r.tamagawa = 2;
  CHECK_THROWS(r.validate());
}

TEST_CASE("place decomposition in Borel(3)") {
  Group g = presets::borel(3);
  const Subgroup whole = g.whole(), unip = g.closure({g.named("g")}), torus = g.closure({g.named("h")}),
                 triv = g.trivial();
  // 11 | m: D = G, I = <g>.
  auto dec = [&](const Subgroup& h, const Subgroup& d, const Subgroup& i) { return decompose_place(g, h, d, i); };
  CHECK(dec(unip, whole, unip).profiles == std::vector<PlaceProfile>{{1, 2, 1}});
  CHECK(dec(torus, whole, unip).profiles == std::vector<PlaceProfile>{{3, 1, 1}});
  CHECK(dec(triv, whole, unip).profiles == std::vector<PlaceProfile>{{3, 2, 1}});
  // Unramified with Frobenius x -> x + 1.
  CHECK(dec(torus, unip, triv).profiles == std::vector<PlaceProfile>{{1, 3, 1}});
  CHECK(dec(unip, unip, triv).profiles == std::vector<PlaceProfile>{{1, 1, 2}});
  // Real place.
  CHECK(dec(torus, torus, torus).profiles == std::vector<PlaceProfile>{{1, 1, 1}, {2, 1, 1}});

  std::mt19937 rng(3);
  for (int p : {3, 5, 7}) {
    Group b = presets::borel(p);
    for (const auto& h : b.subgroup_classes())
      for (const auto& d : b.subgroup_classes()) {
        auto pd = decompose_place(b, h.representative, d.representative, b.trivial());
        CHECK(pd.degree() == static_cast<long>(b.order() / h.order()));
      }
  }
}

TEST_CASE("X1(11) C-quotient parity over Q(mu3, cube root of m)") {
  Group g = presets::borel(3);
  const Subgroup unip = g.closure({g.named("g")}), triv = g.trivial();
  const Integer three = 3;
  auto eleven = finite_place(11, 11, Reduction::split_mult, 1, 1);
  // 11 | m: totally ramified in L, inert in Q(mu3).
  {
    auto f = primes_above(eleven, decompose_place(g, triv, g.whole(), unip));
    auto m = primes_above(eleven, decompose_place(g, unip, g.whole(), unip));
    CHECK(c_quotient_ord_parity(three, f, m) == 1);
  }
  // 11 does not divide m: Frobenius x -> 2x, unramified.
  {
    Subgroup d = g.closure({affine(g, 3, 2, 0)});
    auto f = primes_above(eleven, decompose_place(g, triv, d, triv));
    auto m = primes_above(eleven, decompose_place(g, unip, d, triv));
    CHECK(c_quotient_ord_parity(three, f, m) == 0);
  }
  CHECK(c_quotient_ord_parity(three, {eleven, eleven}, {eleven, eleven}) == 0);
}

TEST_CASE("local Galois data must be consistent") {
  Group g = presets::borel(5);
  const Subgroup unip = g.closure({g.named("g")});
  auto v = finite_place(11, 11, Reduction::good, 0, 1);
  CHECK_THROWS(validate_local_galois(g, g.trivial(), unip, v));
  // Tame inertia <g> at q = 11 = 1 mod 5 forces a Frobenius centralizing g.
  CHECK_NOTHROW(validate_local_galois(g, unip, unip, v));
  CHECK_THROWS(validate_local_galois(g, g.whole(), unip, v));
  // q = 19 = -1 mod 5 needs a Frobenius inverting g.
  auto w = finite_place(19, 19, Reduction::good, 0, 1);
  CHECK_THROWS(validate_local_galois(g, unip, unip, w));
  CHECK_NOTHROW(validate_local_galois(g, g.closure({g.named("g"), affine(g, 5, 4, 0)}), unip, w));
  // G is not cyclic, so it is only an inertia group when wild.
  CHECK_THROWS(validate_local_galois(g, g.whole(), g.whole(), v));
  CHECK_NOTHROW(validate_local_galois(g, g.whole(), g.whole(), finite_place(5, 5, Reduction::good, 0, 1)));
}

TEST_CASE("scenario examples") {
  Group g = presets::borel(5);
  const Subgroup unip = g.closure({g.named("g")}), triv = g.trivial();
  // Case 1: Frobenius x -> 2x, so primes of M split in F/M.
  {
    Subgroup d = g.closure({affine(g, 5, 2, 0)});
    BorelScenario s{5, finite_place(7, 7, Reduction::split_mult, 3, 3), d, triv, ""};
    auto r = tamagawa_root_equivalence(g, s);
    CHECK(r.label == "1");
    CHECK(r.agree);
    const Integer five = 5;
    CHECK(field_terms(s.data, r.in_f, five).c_value == [&] {
      Rational x = 1;
      Rational c = field_terms(s.data, r.in_m, five).c_value;
      for (int k = 0; k < 5; ++k) x *= c;
      return x;
    }());
  }
  // Case 3: one split multiplicative prime of M ramified in F.
  {
    Subgroup d = g.closure({g.named("g"), affine(g, 5, 4, 0)});
    BorelScenario s{5, finite_place(19, 19, Reduction::split_mult, 1, 1), d, unip, ""};
    auto r = tamagawa_root_equivalence(g, s);
    CHECK(r.label == "3");
    CHECK(r.in_m.places() == 2);
    CHECK(r.ord_quotient % 2 == 0);
    CHECK(r.root_product == 1);
    CHECK(r.agree);
  }
  // Good reduction everywhere.
  {
    BorelScenario s{5, finite_place(11, 11, Reduction::good, 0, 1), unip, unip, ""};
    auto r = tamagawa_root_equivalence(g, s);
    CHECK(r.ord_quotient == 0);
    CHECK(r.root_product == 1);
  }
  // Additive at 3 ramified in F/M violates the hypothesis.
  {
    Group b3 = presets::borel(3);
    BorelScenario s{3, finite_place(2, 4, Reduction::additive_pot_good, 4, 1), b3.closure({b3.named("g")}),
                    b3.closure({b3.named("g")}), ""};
    CHECK_THROWS_AS(classify_borel_place(b3, s), HypothesisError);
  }
}

TEST_CASE("Tamagawa side and root number side agree on generated scenarios") {
  std::size_t total = 0;
  std::set<std::string> labels;
  for (int p : {3, 5, 7}) {
    Group g = presets::borel(p);
    auto scenarios = generate_borel_scenarios(g);
    for (const auto& s : scenarios) {
      auto r = tamagawa_root_equivalence(g, s);
      CAPTURE(p);
      CAPTURE(r.label);
      CAPTURE(s.data.place);
      CAPTURE(s.data.kodaira());
      CAPTURE(to_string(r.in_m));
      CHECK(r.agree);
      labels.insert(r.label);
    }
    total += scenarios.size();
  }
  CHECK(total >= 200);
  CHECK(labels == std::set<std::string>{"1", "2", "3", "4a", "4b", "4c", "5a", "5b"});
}
