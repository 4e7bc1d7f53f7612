#include <doctest.h>

#include "brauer/curve_file.hpp"
#include "brauer/parity.hpp"

#include <random>

using namespace brauer;

namespace {

std::vector<LocalCurveData> x1_11() { return load_curve("x1_11.toml").places; }
std::vector<LocalCurveData> curve_49a1() { return load_curve("49a1.toml").places; }

LocalCurveData split(long ell, long ord) { return finite_place(ell, ell, Reduction::split_mult, ord, ord); }

}  // namespace

TEST_CASE("fixtures load") {
  const auto x = load_curve("x1_11.toml");
  CHECK(x.name == "X1(11)");
  REQUIRE(x.places.size() == 2);
  CHECK(global_root_number(x.places) == 1);
  const auto e = load_curve("49a1.toml");
  CHECK(global_root_number(e.places) == 1);
  CHECK(e.rank_m == 1);
}

TEST_CASE("the 7-adic root number of 49A1 comes from the classifier") {
  LocalCurveData v = curve_49a1()[1];
  REQUIRE(v.place == "7");
  CHECK(v.kodaira() == "III");
  const int w = v.w_override.value();
  v.w_override.reset();
  CHECK(local_root_number(v) == -1);
  CHECK(local_root_number(v) == w);
}

TEST_CASE("X1(11) over Q(mu_3, m^(1/3))") {
  for (long m : {22L, 11L, 2L, 5L, 121L, 44L}) {
    CAPTURE(m);
    const auto t = kummer_tower(x1_11(), 3, m);
    const auto r = borel_parity(t, 3, {0, 0});
    const bool divides = m % 11 == 0;
    CHECK(r.tamagawa_class.representative() == (divides ? 3 : 1));
    CHECK(r.verdict.parity == (divides ? 1 : 0));
    CHECK(r.verdict.evidence == Evidence::both);
    REQUIRE(r.rank_over_l);
    CHECK(r.rank_over_l->parity == r.verdict.parity);
    CHECK(r.rank_over_l->combination == "rk(E/L)");
  }
  CHECK_THROWS_AS(kummer_tower(x1_11(), 3, 8), std::invalid_argument);
  CHECK_THROWS_AS(kummer_tower(x1_11(), 3, 1), std::invalid_argument);
}

TEST_CASE("good reduction everywhere is even") {
  auto g = std::make_shared<const Group>(presets::borel(5));
  const auto t = make_tower(TowerFamily::borel, 5, g, {{finite_place(11, 11, Reduction::good, 0, 1), g->closure({g->named("g")}), g->trivial()}});
  const auto r = borel_parity(t, 5);
  CHECK(r.verdict.parity == 0);
  CHECK(r.tamagawa_class.representative() == 1);
  const auto empty = make_tower(TowerFamily::borel, 3, std::make_shared<const Group>(presets::borel(3)), {});
  CHECK(borel_parity(empty, 3).verdict.parity == 0);
}

TEST_CASE("49A1 with m = 2: both sides agree") {
  const auto t = kummer_tower(curve_49a1(), 3, 2);
  const auto r = borel_parity(t, 3, {0, 1});
  CHECK(r.verdict.evidence == Evidence::both);
  CHECK(r.verdict.parity == 0);
  REQUIRE(r.rank_over_l);
  CHECK(r.rank_over_l->parity == 1);
}

TEST_CASE("49A1 false Tate ladder") {
  for (long m : {2L, 5L, 10L, 7L, 14L}) {
    CAPTURE(m);
    const auto ladder = false_tate_ladder(curve_49a1(), 3, m, 5, 0);
    REQUIRE(ladder.size() == 6);
    CHECK(ladder[0].w_l == 1);
    CHECK(ladder[0].verdict_l.parity == 0);
    CHECK(ladder[0].bound_l == 0);
    Integer three = 1;
    for (int n = 1; n <= 5; ++n) {
      CAPTURE(n);
      three *= 3;
      CHECK(ladder[n].w_l == (n % 2 ? -1 : 1));
      CHECK(ladder[n].bound_l == n);
      CHECK(ladder[n].bound_f == three);
      CHECK(ladder[n].w_f == root_number_cyclotomic(curve_49a1(), 3));
      CHECK(ladder[n].verdict_l.evidence == Evidence::root_number_side);
    }
  }
  CHECK(root_number_cyclotomic(curve_49a1(), 3) == -1);
  CHECK_THROWS_AS(false_tate_ladder(curve_49a1(), 3, 2, 2, 1), HypothesisError);
}

TEST_CASE("ladder bounds are monotone") {
  std::mt19937 rng(7);
  const std::vector<long> ms = {2, 3, 5, 6, 10, 11, 13, 22, 26};
  for (int trial = 0; trial < 12; ++trial) {
    const long m = ms[rng() % ms.size()];
    CAPTURE(m);
    for (const auto& curve : {x1_11(), curve_49a1()}) {
      const auto ladder = false_tate_ladder(curve, 3, m, 4);
      for (std::size_t i = 1; i < ladder.size(); ++i) {
        CHECK(ladder[i].bound_l >= ladder[i - 1].bound_l);
        CHECK(ladder[i].bound_f >= ladder[i - 1].bound_f);
        CHECK(ladder[i].bound_f >= ladder[i].bound_l);
        // bound parity matches the root number over L_i
        CHECK(ladder[i].bound_l % 2 == (ladder[i].w_l == 1 ? 0 : 1));
      }
    }
  }
}

TEST_CASE("dihedral p = 5 with one prime in S1 and one in S2") {
  auto g = std::make_shared<const Group>(presets::dihedral(5));
  const int gg = g->named("g");
  const Subgroup cg = g->closure({gg});
  LocalCurveData v2 = finite_place(5, 5, Reduction::additive_pot_good, 2, 1);
  const auto t = make_tower(TowerFamily::dihedral, 5, g, {{split(19, 1), g->whole(), cg}, {v2, g->whole(), g->whole()}});
  const auto r = dihedral_parity(t, 5, 0);
  REQUIRE(r.s1);
  REQUIRE(r.s2);
  CHECK(*r.s1 == 1);
  CHECK(*r.s2 == 1);
  CHECK(r.verdict.parity == 0);
  CHECK(!r.rank_jump);

  const auto one = make_tower(TowerFamily::dihedral, 5, g, {{split(19, 1), g->whole(), cg}});
  const auto j = dihedral_parity(one, 5, 0);
  CHECK(j.verdict.parity == 1);
  CHECK(*j.s1 == 1);
  REQUIRE(j.rank_jump);
  CHECK(*j.rank_jump == "rk_5(E/L) >= rk_5(E/K) + 2");
  CHECK(!dihedral_parity(one, 5, 1).rank_jump);

  const auto none = make_tower(TowerFamily::dihedral, 5, g, {{split(11, 1), cg, g->trivial()}});
  const auto z = dihedral_parity(none, 5);
  CHECK(z.verdict.parity == 0);
  CHECK(*z.s1 == 0);
  CHECK(*z.s2 == 0);
}

TEST_CASE("dihedral p = 3 skips S1 and S2") {
  auto g = std::make_shared<const Group>(presets::dihedral(3));
  const auto t = make_tower(TowerFamily::dihedral, 3, g, {{split(5, 1), g->whole(), g->closure({g->named("g")})}});
  const auto r = dihedral_parity(t, 3, 0);
  CHECK(!r.s1);
  CHECK(r.verdict.parity == 1);
  CHECK(r.rank_jump);
  CHECK_THROWS_AS(dihedral_parity(t, 2), std::invalid_argument);
}

TEST_CASE("S3 tower with a split multiplicative prime ramified in F/M") {
  auto g = std::make_shared<const Group>(presets::borel(3));
  const Subgroup cg = g->closure({g->named("g")});
  const auto odd = make_tower(TowerFamily::s3, 3, g, {{split(5, 1), g->whole(), cg}});
  const auto r = s3_theorem_parity(odd);
  CHECK(r.borel.verdict.parity == 1);
  CHECK(r.selmer_combination.combination == "rk3(E/K)+(rk3(E/M)-rk2(E/M))+(rk3(E/L)-rk2(E/L))");
  const auto even = make_tower(TowerFamily::s3, 3, g, {{split(7, 1), cg, cg}});
  CHECK(s3_theorem_parity(even).borel.verdict.parity == 0);
  const auto empty = make_tower(TowerFamily::s3, 3, g, {});
  CHECK(s3_theorem_parity(empty).borel.verdict.parity == 0);
}

TEST_CASE("S3 on 49A1 with m = 2 agrees with the ladder") {
  const auto k = kummer_tower(curve_49a1(), 3, 2);
  const auto t = make_tower(TowerFamily::s3, 3, k.group, k.places);
  const auto r = s3_theorem_parity(t);
  const auto ladder = false_tate_ladder(curve_49a1(), 3, 2, 1, 0);
  // rk(K) = 0, rk(M) = 1 for 49A1 over Q(mu_3)
  CHECK((r.borel.verdict.parity + 1) % 2 == ladder[1].verdict_l.parity);
}

TEST_CASE("verdicts with disagreeing sides are rejected") {
  CHECK_THROWS_AS(make_verdict("x", 0, 1, {}), InconsistencyError);
  CHECK(make_verdict("x", 1, 1, {}).evidence == Evidence::both);
  CHECK(make_verdict("x", std::nullopt, 1, {}).evidence == Evidence::root_number_side);
  CHECK_THROWS_AS(make_verdict("x", std::nullopt, std::nullopt, {}), std::invalid_argument);
}

TEST_CASE("height block identity") {
  CHECK(height_block_identity_check(QMatrix(1, 1, {Rational(5, 7)})));
  CHECK(height_block_identity_check(QMatrix::identity(2)));
  std::mt19937 rng(1019);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6), size(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    QMatrix h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        h(i, j) = Rational(num(rng), den(rng));
        h(i, j).canonicalize();
      }
    CHECK(height_block_identity_check(h));
  }
  CHECK_THROWS_AS(height_block_identity_check(QMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("curve file errors carry positions") {
  auto err = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_curve(text);
    } catch (const ParseError& e) {
      return {e.line, e.column};
    }
    return {0, 0};
  };
  CHECK(err("[[place]]\nplace = \"inf\"\nkind = \"real\"\n  colour = 3\n") == std::make_pair<std::size_t, std::size_t>(4, 3));
  CHECK(err("[[place]]\nplace = \"inf\"\nplace = \"x\"\n").first == 3);
  CHECK(err("[[place]]\nplace = \"5\"\np = 5\nq = 5\ntype = \"weird\"\n").first == 5);
  CHECK(err("[[place]]\nplace = \"5\"\np = 5\n").first == 1);
  CHECK(err("[[place]]\nplace = \"5\"\np = 5\nq = 5\ntype = \"good\"\nord_delta = x\n").first == 6);
  CHECK(err("name = \"a\"\n").first == 1);
  CHECK(err("[[place]]\nplace = \"inf\"\nkind = \"real\"\n[curve]\n").first == 4);
  CHECK(err("[[place]]\nplace = \"5\"\np = 5\nq = 5\ntype = \"split_mult\"\nord_delta = 2\nc = 1\n").first == 1);
  CHECK_THROWS_AS(load_curve("/nonexistent/curve.toml"), std::runtime_error);
}

TEST_CASE("curve files round trip") {
  for (const char* name : {"x1_11.toml", "49a1.toml"}) {
    const auto c = load_curve(name);
    CHECK(parse_curve(write_curve(c)) == c);
  }
  CurveData c;
  c.name = "curve 1";
  LocalCurveData v = finite_place(3, 9, Reduction::additive_pot_mult, 6, 4);
  v.place = "3";
  v.hints.cstar_square = true;
  v.hints.twist_square = true;
  v.w_override = 1;
  c.places = {real_place(), v};
  CHECK(parse_curve(write_curve(c)) == c);
  c.name = "with \"quotes\"";
  CHECK_THROWS_AS(write_curve(c), std::invalid_argument);
}

TEST_CASE("towers from curve files") {
  const auto d = tower_from_curve(load_curve("dihedral5_synthetic.toml"), TowerFamily::dihedral, 5);
  const auto r = dihedral_parity(d, 5);
  CHECK(*r.s1 == 1);
  CHECK(*r.s2 == 1);
  CHECK(r.verdict.parity == 0);
  const auto s = tower_from_curve(load_curve("s3_split.toml"), TowerFamily::s3, 3);
  CHECK(s3_theorem_parity(s).borel.verdict.parity == 1);
  CHECK_THROWS_AS(tower_from_curve(load_curve("x1_11.toml"), TowerFamily::borel, 3), std::invalid_argument);
  const Group g = presets::dihedral(5);
  CHECK(parse_subgroup_words(g, "g").order() == 5);
  CHECK(parse_subgroup_words(g, "g^-1*h").order() == 2);
  CHECK(parse_subgroup_words(g, "1").order() == 1);
  CHECK(parse_subgroup_words(g, "g, h").order() == 10);
  CHECK_THROWS_AS(parse_subgroup_words(g, "k"), std::invalid_argument);
  CHECK_THROWS_AS(parse_subgroup_words(g, "g^x"), std::invalid_argument);
  const auto c = load_curve("dihedral5_synthetic.toml");
  CHECK(parse_curve(write_curve(c)) == c);
}
