#include <doctest.h>

#include "brauer/regconst.hpp"

#include <random>
#include <set>

using namespace brauer;

namespace {

std::size_t column_of_dim(const RegConstTable& t, std::size_t dim) {
  for (std::size_t k = 0; k < t.irreducibles.size(); ++k)
    if (t.irreducibles[k].dim() == dim && t.irreducibles[k].label != "1") return k;
  FAIL("no irreducible of dimension " << dim);
  return 0;
}

std::size_t row_named(const RegConstTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.relations.size(); ++i)
    if (t.relations[i].name == name) return i;
  FAIL("no relation " << name);
  return 0;
}

QMatrix random_positive_definite(std::mt19937& rng, std::size_t d) {
  std::uniform_int_distribution<int> u(-3, 3);
  QMatrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = u(rng);
  return a.transpose() * a + QMatrix::identity(d);
}

QMatrix random_invertible(std::mt19937& rng, std::size_t d) {
  std::uniform_int_distribution<int> u(-2, 2);
  while (true) {
    QMatrix a(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a(i, j) = u(rng);
    if (determinant(a) != 0) return a;
  }
}

}  // namespace

TEST_CASE("relation strings round trip") {
  Group a5 = presets::alternating(5);
  for (const auto& r : standard_relations(a5)) {
    CHECK(is_relation(a5, r.coefficients));
    CHECK(parse_relation(a5, render_relation(a5, r.coefficients)) == r.coefficients);
  }
  Group s3 = presets::symmetric(3);
  CHECK(render_relation(s3, parse_relation(s3, "2S3+1-2C2-C3")) == "2S3+1-2C2-C3");
  CHECK(parse_relation(s3, "2*1-2*1") == RelationVector(4, 0));
  CHECK_THROWS(parse_relation(s3, "2S3+Q9"));
  CHECK_THROWS(parse_relation(s3, "21"));
}

TEST_CASE("S3 regulator constants") {
  Group s3 = presets::symmetric(3);
  auto t = regconst_table(s3, standard_relations(s3), false);
  REQUIRE(t.entries.size() == 1);
  CHECK(t.relations[0].name == "2S3+1-2C2-C3");
  for (const auto& e : t.entries[0]) CHECK(e.representative() == 3);
  CHECK(regulator_quotient_class(t, 0, {1, 1, 1}).representative() == 3);
  CHECK(regulator_quotient_class(t, 0, {0, 0, 0}).is_trivial());
  auto cc = computable_combinations(t);
  REQUIRE(cc.size() == 1);
  CHECK(cc[0].prime == 3);
  CHECK(cc[0].rendered == std::vector<std::string>{"1+rho1+rho2"});
}

TEST_CASE("A5 regulator constant table") {
  Group a5 = presets::alternating(5);
  auto t = regconst_table(a5, standard_relations(a5));
  const std::size_t c1 = 0, c6 = column_of_dim(t, 6), c4 = column_of_dim(t, 4), c5 = column_of_dim(t, 5);
  const std::vector<std::pair<std::string, std::vector<long>>> expected = {
      {"1-3C2+2C2xC2", {2, 1, 1, 2}},
      {"C2xC2-2D10-A4+2A5", {3, 1, 3, 3}},
      {"S3-D10-A4+A5", {3, 1, 3, 3}},
      {"1-2C2-C5+2D10", {5, 5, 5, 1}},
      {"C3-C5-2A4+2A5", {15, 5, 15, 3}},
  };
  for (const auto& [name, vals] : expected) {
    std::size_t r = row_named(t, name);
    CHECK(t.entries[r][c1].representative() == vals[0]);
    CHECK(t.entries[r][c6].representative() == vals[1]);
    CHECK(t.entries[r][c4].representative() == vals[2]);
    CHECK(t.entries[r][c5].representative() == vals[3]);
  }
  std::vector<long> mult(4, 0);
  mult[c1] = 1;
  mult[c5] = 1;
  CHECK(regulator_quotient_class(t, row_named(t, "1-3C2+2C2xC2"), mult).is_trivial());
  std::set<std::string> combos;
  for (const auto& cc : computable_combinations(t))
    for (const auto& s : cc.rendered) combos.insert(s);
  CHECK(combos == std::set<std::string>{"1+rho5", "1+rho4+rho5", "1+rho4+rho6"});
}

TEST_CASE("Borel regulator constants and the normalized Gram determinant") {
  for (int p : {3, 5, 7}) {
    Group g = presets::borel(p);
    auto rels = standard_relations(g);
    REQUIRE(rels.size() == 1);
    auto t = regconst_table(g, rels, false);
    for (std::size_t k = 0; k < t.irreducibles.size(); ++k) {
      const auto& irr = t.irreducibles[k];
      long expect = p;
      if (irr.label != "1" && irr.dim() != static_cast<std::size_t>(p - 1))
        expect = irr.dim() % 2 ? p : 1;  // sigma: p^dim
      CHECK(t.entries[0][k].representative() == expect);
    }
    // Normalized form on rho with basis v, gv, ..., g^{p-2} v.
    const auto& rho = t.irreducibles.back().module;
    REQUIRE(rho.dim() == static_cast<std::size_t>(p - 1));
    QMatrix gram = invariant_inner_product(rho);
    QMatrix v = fixed_subspace(rho, g.closure({g.named("h")}));
    REQUIRE(v.cols() == 1);
    QMatrix basis(rho.dim(), rho.dim());
    QMatrix w = v;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
      for (std::size_t r = 0; r < rho.dim(); ++r) basis(r, i) = w(r, 0);
      w = rho.matrix(g.named("g")) * w;
    }
    QMatrix x = basis.transpose() * gram * basis;
    Rational scale = 1 / x(0, 0);
    x = x.scaled(scale);
    CHECK(x(0, 1) == Rational(-1, p - 1));
    Rational expected = 1;
    for (int i = 0; i < p - 2; ++i) expected *= p;
    for (int i = 0; i < p - 1; ++i) expected /= (p - 1);
    CHECK(determinant(x) == expected);
  }
}

TEST_CASE("Borel(3) table matches the S3 table") {
  Group b = presets::borel(3), s = presets::symmetric(3);
  auto tb = regconst_table(b, standard_relations(b), false);
  auto ts = regconst_table(s, standard_relations(s), false);
  CHECK(tb.relations[0].name == ts.relations[0].name);
  for (std::size_t k = 0; k < 3; ++k) CHECK(tb.entries[0][k] == ts.entries[0][k]);
}

TEST_CASE("degenerate inputs") {
  Group triv = presets::cyclic(1);
  auto t = regconst_table(triv);
  CHECK(t.relations.empty());
  CHECK(computable_combinations(t).empty());
  Group s3 = presets::symmetric(3);
  auto cat = rational_irreducibles(s3);
  CHECK(regulator_constant(s3, RelationVector(4, 0), cat[2].module).is_trivial());
  CHECK_THROWS(regulator_constant(s3, RelationVector{1, 0, 0, 0}, cat[2].module));
  RationalModule unflagged = cat[2].module;
  unflagged.irreducible = false;
  CHECK_THROWS(regulator_constant(s3, parse_relation(s3, "2S3+1-2C2-C3"), unflagged));
  CHECK(regconst_table(presets::cyclic(5)).relations.empty());
}

TEST_CASE("inner-product and basis independence") {
  std::mt19937 rng(2024);
  for (const char* name : {"S3", "A5", "Borel:5", "Borel:7", "D2n:5", "S4"}) {
    Group g = presets::by_name(name);
    auto t = regconst_table(g, standard_relations(g));
    for (std::size_t r = 0; r < t.relations.size(); ++r)
      for (std::size_t k = 0; k < t.irreducibles.size(); ++k) {
        const auto& rho = t.irreducibles[k].module;
        for (int trial = 0; trial < 5; ++trial) {
          QMatrix seed = random_positive_definite(rng, rho.dim());
          QMatrix gram = invariant_inner_product(rho, &seed);
          CHECK(regulator_constant(g, t.relations[r].coefficients, rho, &gram) == t.entries[r][k]);
        }
        QMatrix p = random_invertible(rng, rho.dim()), pinv = inverse(p);
        std::vector<QMatrix> conj;
        for (const auto& a : rho.generator_matrices()) conj.push_back(pinv * a * p);
        RationalModule moved(g, conj);
        moved.irreducible = true;
        CHECK(regulator_constant(g, t.relations[r].coefficients, moved) == t.entries[r][k]);
      }
  }
}

TEST_CASE("bilinearity in the relation and dimension cancellation") {
  std::mt19937 rng(99);
  for (const char* name : {"A5", "S4", "Borel:5", "D2n:6"}) {
    Group g = presets::by_name(name);
    auto t = regconst_table(g);
    const auto& classes = g.subgroup_classes();
    std::uniform_int_distribution<int> u(-2, 2);
    for (int trial = 0; trial < 4 && t.relations.size() >= 2; ++trial) {
      std::size_t a = rng() % t.relations.size(), b = rng() % t.relations.size();
      long x = u(rng), y = u(rng);
      RelationVector sum(classes.size());
      for (std::size_t i = 0; i < sum.size(); ++i)
        sum[i] = x * t.relations[a].coefficients[i] + y * t.relations[b].coefficients[i];
      for (std::size_t k = 0; k < t.irreducibles.size(); ++k) {
        SquareClass expect;
        if (x % 2) expect = expect * t.entries[a][k];
        if (y % 2) expect = expect * t.entries[b][k];
        CHECK(regulator_constant(g, sum, t.irreducibles[k].module) == expect);
      }
    }
    for (const auto& rel : t.relations)
      for (const auto& irr : t.irreducibles) {
        long total = 0;
        for (std::size_t i = 0; i < classes.size(); ++i)
          if (rel.coefficients[i])
            total += rel.coefficients[i] * static_cast<long>(fixed_subspace(irr.module, classes[i].representative).cols());
        CHECK(total == 0);
      }
  }
}
