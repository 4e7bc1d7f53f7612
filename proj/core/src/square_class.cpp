#include "brauer/square_class.hpp"

#include <random>
#include <stdexcept>

namespace brauer {
namespace {

Integer pollard_rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::mt19937_64 rng(12345);
  while (true) {
    Integer c = rng() % 1000 + 1, x = rng() % 1000 + 2, y = x, d = 1;
    auto f = [&](const Integer& v) {
      Integer r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Integer diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(Integer n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n]++;
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer r = sqrt(n);
    std::map<Integer, unsigned> sub;
    factor_into(r, sub);
    for (auto& [p, e] : sub) out[p] += 2 * e;
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::map<Integer, unsigned> factorize(const Integer& n_in) {
  if (n_in == 0) throw std::domain_error("factorize: zero");
  Integer n = abs(n_in);
  std::map<Integer, unsigned> out;
  for (unsigned long p = 2; p <= 1000000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out[Integer(p)]++;
      n /= p;
    }
  }
  factor_into(n, out);
  return out;
}

long ord_p(const Integer& x, const Integer& p) {
  if (x == 0) throw std::domain_error("ord_p: zero");
  Integer v = abs(x);
  long e = 0;
  while (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) {
    v /= p;
    ++e;
  }
  return e;
}

long ord_p(const Rational& x, const Integer& p) {
  return ord_p(x.get_num(), p) - ord_p(x.get_den(), p);
}

SquareClass SquareClass::of(const Rational& x) {
  if (x == 0) throw std::domain_error("SquareClass: zero has no square class");
  Integer n = x.get_num() * x.get_den();
  Integer rep = n < 0 ? -1 : 1;
  for (auto& [p, e] : factorize(n))
    if (e % 2) rep *= p;
  return SquareClass(rep);
}

int SquareClass::ord_parity(const Integer& p) const {
  return mpz_divisible_p(rep_.get_mpz_t(), p.get_mpz_t()) ? 1 : 0;
}

std::string SquareClass::to_string() const { return rep_.get_str(); }

SquareClass SquareClass::operator*(const SquareClass& o) const {
  Integer g;
  mpz_gcd(g.get_mpz_t(), rep_.get_mpz_t(), o.rep_.get_mpz_t());
  Integer r = (rep_ / g) * (o.rep_ / g);
  if (rep_ < 0 && o.rep_ < 0) r = abs(r);
  return SquareClass(r);
}

}  // namespace brauer
