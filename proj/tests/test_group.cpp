#include <doctest.h>

#include "brauer/group.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace brauer;

namespace {

// Independent oracle: every subgroup, by closing {1} under adjoining one
// element at a time.
std::set<std::vector<int>> all_subgroups(const Group& g) {
  std::set<std::vector<int>> found;
  std::vector<Subgroup> queue{g.trivial()};
  found.insert(queue[0].elements);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (queue[k].contains(static_cast<int>(x))) continue;
      auto gens = queue[k].generators;
      gens.push_back(static_cast<int>(x));
      Subgroup s = g.closure(gens);
      if (found.insert(s.elements).second) queue.push_back(s);
    }
  }
  return found;
}

std::size_t total_from_classes(const Group& g) {
  std::size_t total = 0;
  for (const auto& c : g.subgroup_classes()) total += c.class_size;
  return total;
}

}  // namespace

TEST_CASE("group orders from presets") {
  CHECK(presets::symmetric(3).order() == 6);
  CHECK(presets::alternating(5).order() == 60);
  CHECK(presets::symmetric(5).order() == 120);
  CHECK(presets::dihedral(5).order() == 10);
  CHECK(presets::dihedral(2).order() == 4);
  for (int p : {3, 5, 7, 11}) CHECK(presets::borel(p).order() == static_cast<std::size_t>(p * (p - 1)));
  CHECK(presets::by_name("C5").order() == 5);
  CHECK_THROWS(presets::by_name("X7"));
}

TEST_CASE("Schreier-Sims agrees with enumeration") {
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    int deg = 3 + t % 4;
    std::vector<Perm> gens;
    for (int k = 0; k < 2; ++k) {
      Perm p = identity_perm(deg);
      std::shuffle(p.begin(), p.end(), rng);
      gens.push_back(p);
    }
    Group g = Group::from_generators(gens);
    CHECK(schreier_sims_order(gens, deg) == g.order());
  }
  CHECK(schreier_sims_order(presets::symmetric(6).generator_perms(), 6) == 720);
  CHECK_THROWS_AS(Group::from_generators(presets::symmetric(8).generator_perms(), "S8"), CapacityError);
}

TEST_CASE("multiplication convention") {
  Group g = presets::symmetric(3);
  Perm a = parse_cycles("(0 1)", 3), b = parse_cycles("(1 2)", 3);
  int ia = g.index_of(a), ib = g.index_of(b);
  // (a*b)(x) = a(b(x)): 2 -> 1 -> 0.
  CHECK(g.element(g.mul(ia, ib))[2] == 0);
  CHECK(g.identity() == g.index_of(identity_perm(3)));
  for (std::size_t x = 0; x < g.order(); ++x) CHECK(g.mul(static_cast<int>(x), g.inv(static_cast<int>(x))) == 0);
}

TEST_CASE("cycle notation round trip") {
  Perm p = parse_cycles("(0 3 2)(1 4)", 0);
  CHECK(p.size() == 5);
  CHECK(parse_cycles(cycle_string(p), 5) == p);
  CHECK_THROWS(parse_cycles("(0 1", 3));
  CHECK_THROWS(parse_cycles("(0 0)", 3));
}

TEST_CASE("subgroup classes match the exhaustive oracle") {
  for (const char* name : {"S3", "C6", "D2n:4", "S4", "A4", "A5", "Borel:5", "Borel:7", "D2n:6", "S5"}) {
    Group g = presets::by_name(name);
    auto oracle = all_subgroups(g);
    INFO(name);
    CHECK(oracle.size() == total_from_classes(g));
    for (const auto& c : g.subgroup_classes()) CHECK(oracle.count(c.representative.elements) == 1);
  }
  CHECK(total_from_classes(presets::alternating(5)) == 59);
  CHECK(total_from_classes(presets::symmetric(5)) == 156);
  CHECK(presets::alternating(5).subgroup_classes().size() == 9);
  CHECK(presets::symmetric(4).subgroup_classes().size() == 11);
}

TEST_CASE("subgroup classes of S6 with a perfect subgroup") {
  Group g = presets::symmetric(6);
  CHECK(total_from_classes(g) == 1455);
  CHECK(g.subgroup_classes().size() == 56);
}

TEST_CASE("class invariants: conjugation invariance and ordering") {
  Group g = presets::symmetric(4);
  const auto& classes = g.subgroup_classes();
  for (std::size_t i = 1; i < classes.size(); ++i) CHECK(classes[i - 1].order() <= classes[i].order());
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t x = 0; x < g.order(); x += 5)
      CHECK(g.find_class(g.conjugate(classes[i].representative, static_cast<int>(x))) == i);
}

TEST_CASE("labels") {
  auto labels = [](const Group& g) {
    std::vector<std::string> out;
    for (const auto& c : g.subgroup_classes()) out.push_back(c.label);
    return out;
  };
  CHECK(labels(presets::symmetric(3)) == std::vector<std::string>{"1", "C2", "C3", "S3"});
  CHECK(labels(presets::alternating(5)) ==
        std::vector<std::string>{"1", "C2", "C3", "C2xC2", "C5", "S3", "D10", "A4", "A5"});
  CHECK(labels(presets::borel(5)).back() == "C5:C4");
  CHECK(labels(presets::borel(7)).back() == "C7:C6");
  auto s4 = labels(presets::symmetric(4));
  CHECK(std::count(s4.begin(), s4.end(), "D8") == 1);
  CHECK(std::count(s4.begin(), s4.end(), "S4") == 1);
  CHECK(std::count(s4.begin(), s4.end(), "C2a") == 1);
}

TEST_CASE("Borel generators satisfy the expected relations") {
  for (int p : {3, 5, 7}) {
    Group g = presets::borel(p);
    int a = g.named("g"), h = g.named("h");
    CHECK(g.element_order(a) == p);
    CHECK(g.element_order(h) == p - 1);
    int r = primitive_root(p);
    CHECK(g.conj(h, a) == g.power(a, r));
    CHECK(g.is_normal(g.closure({a})));
  }
  Group d = presets::dihedral(5);
  int a = d.named("g"), h = d.named("h");
  CHECK(d.mul(d.mul(h, a), d.mul(h, a)) == 0);
}

TEST_CASE("coset spaces") {
  Group g = presets::alternating(5);
  for (const auto& c : g.subgroup_classes()) {
    CosetSpace cs(g, c.representative);
    CHECK(cs.size() * c.order() == g.order());
    CHECK(cs.coset_of_element(0) == 0);
    // Action is a homomorphism.
    for (std::size_t x = 0; x < g.order(); x += 7)
      for (std::size_t y = 0; y < g.order(); y += 11)
        CHECK(compose(cs.permutation(static_cast<int>(x)), cs.permutation(static_cast<int>(y))) ==
              cs.permutation(g.mul(static_cast<int>(x), static_cast<int>(y))));
  }
  Group b = presets::borel(3);
  Subgroup c2 = b.closure({b.named("h")});
  int gg = b.named("g");
  CosetSpace explicit_cs(b, c2, {0, gg, b.mul(gg, gg)});
  CHECK(explicit_cs.act(gg, 2) == 0);
  CHECK_THROWS(CosetSpace(b, c2, {0, b.named("h"), gg}));
}
