#pragma once

#include "brauer/matrix.hpp"

#include <map>
#include <string>

namespace brauer {

// Prime factorization of |n|; n != 0.
std::map<Integer, unsigned> factorize(const Integer& n);
// Exponent of prime p in the rational x (x != 0).
long ord_p(const Rational& x, const Integer& p);
long ord_p(const Integer& x, const Integer& p);
bool is_prime(const Integer& n);

// Element of Q^x / (Q^x)^2, stored as its signed squarefree representative.
class SquareClass {
 public:
  SquareClass() : rep_(1) {}
  static SquareClass of(const Rational& x);
  static SquareClass of(const Integer& x) { return of(Rational(x)); }
  static SquareClass of(long x) { return of(Rational(x)); }

  const Integer& representative() const { return rep_; }
  bool is_trivial() const { return rep_ == 1; }
  // Parity of the exponent of p in any element of the class.
  int ord_parity(const Integer& p) const;
  std::string to_string() const;

  SquareClass operator*(const SquareClass& o) const;
  bool operator==(const SquareClass& o) const { return rep_ == o.rep_; }
  bool operator!=(const SquareClass& o) const { return rep_ != o.rep_; }

 private:
  explicit SquareClass(Integer r) : rep_(std::move(r)) {}
  Integer rep_;
};

}  // namespace brauer
