#include <doctest.h>

#include "brauer/matrix.hpp"
#include "brauer/polynomial.hpp"
#include "brauer/square_class.hpp"

#include <random>

using namespace brauer;

namespace {

QMatrix random_qmatrix(std::mt19937& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("determinants agree between Bareiss and rational elimination") {
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 1 + t % 7;
    QMatrix q = random_qmatrix(rng, n, n, 5);
    CHECK(Rational(determinant(to_integer(q))) == determinant(q));
  }
  ZMatrix m{{2, 0, 1}, {1, 3, 2}, {1, 1, 2}};
  CHECK(determinant(m) == 6);
}

TEST_CASE("kernel vectors are annihilated and rank-nullity holds") {
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + t % 5, c = 1 + (t * 3) % 7;
    QMatrix a = random_qmatrix(rng, r, c, 2);
    if (t % 3 == 0 && r > 1)
      for (std::size_t j = 0; j < c; ++j) a(r - 1, j) = a(0, j) * 2;
    QMatrix k = kernel(a);
    CHECK((a * k).is_zero());
    CHECK(rank(a) + k.cols() == c);
  }
}

TEST_CASE("solve and inverse") {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    QMatrix a = random_qmatrix(rng, 4, 4, 4);
    if (determinant(a) == 0) continue;
    QMatrix inv = inverse(a);
    CHECK(a * inv == QMatrix::identity(4));
  }
}

TEST_CASE("integer left kernel generates all integer relations") {
  ZMatrix m{{1, 1}, {2, 2}, {1, -1}, {3, 1}};
  ZMatrix k = integer_left_kernel(m);
  CHECK(k.rows() == 2);
  CHECK((k * m).is_zero());
  // Determinant of the saturated lattice index check: (1,0,..)-style HNF rows.
  ZMatrix h = hermite_normal_form(k);
  CHECK(h == k);
}

TEST_CASE("square classes") {
  CHECK(SquareClass::of(Rational(12)).representative() == 3);
  CHECK(SquareClass::of(Rational(-8, 9)).representative() == -2);
  CHECK(SquareClass::of(Rational(1, 4)).is_trivial());
  CHECK((SquareClass::of(6) * SquareClass::of(10)).representative() == 15);
  CHECK((SquareClass::of(-3) * SquareClass::of(-3)).is_trivial());
  CHECK(SquareClass::of(Rational(45, 2)).ord_parity(5) == 1);
  Integer big = Integer("1000003") * Integer("1000033") * 7;
  CHECK(SquareClass::of(big).representative() == big);
}

TEST_CASE("characteristic polynomial and rational roots") {
  QMatrix m{{2, 1}, {1, 2}};
  auto f = characteristic_polynomial(m);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == 3);
  CHECK(f[1] == -4);
  CHECK(f[2] == 1);
  auto roots = rational_roots(to_integer_poly(f));
  CHECK(roots.size() == 2);
  ZPoly g{-2, 0, 1};  // x^2 - 2
  CHECK(rational_roots(g).empty());
  ZPoly h{-2, -2, 1, 1};  // (x+1)(x^2-2)
  CHECK(strip_rational_roots(h) == ZPoly{-2, 0, 1});
}

TEST_CASE("Newton polygon single slope") {
  CHECK(newton_polygon_single_slope(ZPoly{3, 0, 1}, 3));   // x^2 + 3
  CHECK(!newton_polygon_single_slope(ZPoly{9, 1, 1}, 3));  // slopes 0 and 2
  CHECK(newton_polygon_single_slope(ZPoly{27, 9, 1}, 3));
  CHECK(newton_polygon_single_slope(ZPoly{1, 1, 1}, 2));
}

TEST_CASE("factor degrees of binomials over finite fields") {
  // x^3 - 2 over F_7: 2 is not a cube mod 7, so irreducible.
  CHECK(factor_degrees_binomial_mod(3, 2, 7) == std::vector<unsigned>{3});
  // x^3 - 1 over F_7 splits.
  CHECK(factor_degrees_binomial_mod(3, 1, 7) == std::vector<unsigned>{1, 1, 1});
  // x^3 - 2 over F_5: one root, one quadratic.
  CHECK(factor_degrees_binomial_mod(3, 2, 5) == std::vector<unsigned>{1, 2});
  // Total degree is preserved.
  for (unsigned long ell : {5UL, 7UL, 11UL, 13UL}) {
    auto d = factor_degrees_binomial_mod(9, 2, ell);
    unsigned s = 0;
    for (auto x : d) s += x;
    CHECK(s == 9);
  }
}
