#include "brauer/polynomial.hpp"

#include "brauer/square_class.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <stdexcept>

namespace brauer {

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Rational evaluate(const QPoly& f, const Rational& x) {
  Rational acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly characteristic_polynomial(const QMatrix& m) {
  if (!m.square()) throw std::invalid_argument("characteristic_polynomial: non-square matrix");
  const std::size_t n = m.rows();
  // Interpolate det(x I - m) at x = 0..n (Newton divided differences).
  std::vector<Rational> xs(n + 1), ys(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    xs[k] = Rational(static_cast<long>(k));
    QMatrix a = m.scaled(-1);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += xs[k];
    ys[k] = determinant(a);
  }
  std::vector<Rational> coef = ys;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = n; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
  QPoly result{coef[n]};
  for (std::size_t i = n; i-- > 0;) {
    QPoly next(result.size() + 1, Rational(0));
    for (std::size_t k = 0; k < result.size(); ++k) {
      next[k + 1] += result[k];
      next[k] -= result[k] * xs[i];
    }
    next[0] += coef[i];
    result = next;
  }
  trim(result);
  return result;
}

ZPoly to_integer_poly(const QPoly& f) {
  ZPoly out;
  for (const auto& c : f) {
    if (c.get_den() != 1) throw std::domain_error("to_integer_poly: non-integral coefficient");
    out.push_back(c.get_num());
  }
  return out;
}

namespace {

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> ds{1};
  for (auto& [p, e] : factorize(n)) {
    std::size_t sz = ds.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
    }
  }
  return ds;
}

// Synthetic division by (x - r); exact.
QPoly divide_linear(const QPoly& f, const Rational& r) {
  const std::size_t n = f.size() - 1;
  QPoly q(n, Rational(0));
  Rational carry = 0;
  for (std::size_t i = n; i-- > 0;) {
    carry = f[i + 1] + carry * r;
    q[i] = carry;
  }
  return q;
}

ZPoly primitive(const QPoly& f) {
  Integer den = 1;
  for (const auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly out;
  Integer g = 0;
  for (const auto& c : f) {
    Rational s = c * den;
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g != 0)
    for (auto& c : out) c /= g;
  if (!out.empty() && out.back() < 0)
    for (auto& c : out) c = -c;
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(const ZPoly& f_in) {
  ZPoly f = f_in;
  trim(f);
  std::vector<Rational> roots;
  if (f.size() <= 1) return roots;
  QPoly q(f.begin(), f.end());
  while (q.size() > 1 && q[0] == 0) {
    roots.push_back(0);
    q.erase(q.begin());
  }
  if (q.size() <= 1) return roots;
  ZPoly z = primitive(q);
  auto num = divisors(z.front());
  auto den = divisors(z.back());
  std::set<Rational> candidates;
  for (auto& a : num)
    for (auto& b : den) {
      Rational r(a, b);
      r.canonicalize();
      candidates.insert(r);
      candidates.insert(-r);
    }
  for (const auto& r : candidates) {
    while (q.size() > 1 && evaluate(q, r) == 0) {
      roots.push_back(r);
      q = divide_linear(q, r);
    }
  }
  return roots;
}

ZPoly strip_rational_roots(const ZPoly& f_in) {
  QPoly q(f_in.begin(), f_in.end());
  trim(q);
  for (const auto& r : rational_roots(f_in)) q = divide_linear(q, r);
  return primitive(q);
}

bool newton_polygon_single_slope(const ZPoly& f_in, const Integer& p) {
  ZPoly f = f_in;
  trim(f);
  if (f.size() <= 1) return true;
  const long n = static_cast<long>(f.size()) - 1;
  if (f[0] == 0) {
    // Only c x^n has a single (degenerate) slope.
    for (long i = 0; i < n; ++i)
      if (f[i] != 0) return false;
    return true;
  }
  const long v0 = ord_p(f[0], p), vn = ord_p(f[n], p);
  for (long i = 1; i < n; ++i) {
    if (f[i] == 0) continue;
    // Point (i, v_i) must lie on or above the segment from (0, v0) to (n, vn).
    if (n * ord_p(f[i], p) < n * v0 + i * (vn - v0)) return false;
  }
  return true;
}

namespace {

using Fp = std::vector<long long>;  // coefficients mod ell, low degree first

void fp_trim(Fp& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long long inv_mod(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, a1 = a % m;
  if (a1 < 0) a1 += m;
  long long b = a1;
  while (b) {
    long long q = g / b;
    std::tie(g, b) = std::make_pair(b, g - q * b);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  return ((x % m) + m) % m;
}

Fp fp_mod(Fp a, const Fp& m, long long ell) {
  fp_trim(a);
  const long long lead_inv = inv_mod(m.back(), ell);
  while (a.size() >= m.size()) {
    long long c = a.back() * lead_inv % ell;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % ell + ell) % ell;
    fp_trim(a);
  }
  return a;
}

Fp fp_mulmod(const Fp& a, const Fp& b, const Fp& m, long long ell) {
  if (a.empty() || b.empty()) return {};
  Fp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % ell;
  return fp_mod(r, m, ell);
}

Fp fp_powmod(Fp base, unsigned long long e, const Fp& m, long long ell) {
  Fp r{1};
  base = fp_mod(base, m, ell);
  while (e) {
    if (e & 1) r = fp_mulmod(r, base, m, ell);
    base = fp_mulmod(base, base, m, ell);
    e >>= 1;
  }
  return r;
}

Fp fp_gcd(Fp a, Fp b, long long ell) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    Fp r = fp_mod(a, b, ell);
    a = b;
    b = r;
  }
  return a;
}

Fp fp_div(Fp a, const Fp& b, long long ell) {
  fp_trim(a);
  Fp q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const long long lead_inv = inv_mod(b.back(), ell);
  while (a.size() >= b.size() && !a.empty()) {
    long long c = a.back() * lead_inv % ell;
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % ell + ell) % ell;
    fp_trim(a);
  }
  return q;
}

}  // namespace

std::vector<unsigned> factor_degrees_binomial_mod(unsigned long n, long a, unsigned long ell_u) {
  const long long ell = static_cast<long long>(ell_u);
  if (n % ell_u == 0 || ((a % ell) + ell) % ell == 0)
    throw std::invalid_argument("factor_degrees_binomial_mod: ell divides n*a");
  Fp f(n + 1, 0);
  f[0] = ((-a) % ell + ell) % ell;
  f[n] = 1;
  std::vector<unsigned> degrees;
  Fp h{0, 1};
  for (unsigned d = 1; f.size() > 1; ++d) {
    if (2 * d > f.size() - 1) {
      degrees.push_back(static_cast<unsigned>(f.size() - 1));
      break;
    }
    h = fp_powmod(h, ell, f, ell);
    Fp hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] - 1 + ell) % ell;
    fp_trim(hx);
    Fp g = fp_gcd(f, hx, ell);
    if (g.size() > 1) {
      for (std::size_t k = 0; k < (g.size() - 1) / d; ++k) degrees.push_back(d);
      f = fp_div(f, g, ell);
      h = fp_mod(h, f, ell);
    }
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

}  // namespace brauer
