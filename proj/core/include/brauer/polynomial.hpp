#pragma once

#include "brauer/matrix.hpp"

#include <vector>

namespace brauer {

// Dense polynomial, coefficient i multiplies x^i.
using QPoly = std::vector<Rational>;
using ZPoly = std::vector<Integer>;

void trim(QPoly& f);
void trim(ZPoly& f);
Rational evaluate(const QPoly& f, const Rational& x);

// det(x I - m), monic of degree n.
QPoly characteristic_polynomial(const QMatrix& m);
// Requires integral coefficients.
ZPoly to_integer_poly(const QPoly& f);

// Rational roots of an integer polynomial with multiplicity, found among
// +-(divisor of a0)/(divisor of an).
std::vector<Rational> rational_roots(const ZPoly& f);
// f with all rational roots removed (primitive integer polynomial).
ZPoly strip_rational_roots(const ZPoly& f);

// True if the p-adic Newton polygon of f has a single slope.
bool newton_polygon_single_slope(const ZPoly& f, const Integer& p);

// Degrees of the irreducible factors of x^n - a over F_ell; requires
// ell prime, ell not dividing n*a.
std::vector<unsigned> factor_degrees_binomial_mod(unsigned long n, long a, unsigned long ell);

}  // namespace brauer
