#include "brauer/matrix.hpp"

#include <utility>

namespace brauer {

QMatrix to_rational(const ZMatrix& m) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

ZMatrix to_integer(const QMatrix& m) {
  ZMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw std::domain_error("to_integer: non-integral entry");
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  QMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

QMatrix vstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  QMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t R = m.rows(), C = m.cols();
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && m(p, c) == 0) ++p;
    if (p == R) continue;
    if (p != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < C; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < C; ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

QMatrix kernel(const QMatrix& m) {
  QMatrix r = m;
  auto piv = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  QMatrix out(m.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    out(free[k], k) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) out(piv[i], k) = -r(i, free[k]);
  }
  return out;
}

QMatrix column_space(const QMatrix& m) {
  QMatrix t = m.transpose();
  auto piv = rref(t);
  QMatrix out(m.rows(), piv.size());
  for (std::size_t k = 0; k < piv.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, k) = t(k, i);
  return out;
}

Rational determinant(QMatrix m) {
  if (!m.square()) throw std::invalid_argument("determinant: non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Rational inv = 1 / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

Integer determinant(const ZMatrix& in) {
  if (!in.square()) throw std::invalid_argument("determinant: non-square matrix");
  const std::size_t n = in.rows();
  if (n == 0) return 1;
  ZMatrix m = in;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

QMatrix solve(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  QMatrix aug = hstack(a, b);
  auto piv = rref(aug);
  const std::size_t n = a.cols();
  for (auto c : piv)
    if (c >= n) throw std::domain_error("solve: inconsistent system");
  if (piv.size() != n) throw std::domain_error("solve: solution not unique");
  QMatrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
  return x;
}

QMatrix inverse(const QMatrix& m) {
  if (!m.square()) throw std::invalid_argument("inverse: non-square matrix");
  return solve(m, QMatrix::identity(m.rows()));
}

QMatrix intersect_column_spaces(const QMatrix& a, const QMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return QMatrix(a.rows(), 0);
  QMatrix neg_b = b.scaled(-1);
  QMatrix k = kernel(hstack(a, neg_b));
  if (k.cols() == 0) return QMatrix(a.rows(), 0);
  return column_space(a * k.block(0, 0, a.cols(), k.cols()));
}

namespace {

// Integer row echelon on the first `ncols` columns using gcd elimination.
// Returns the number of pivot rows.
std::size_t integer_echelon(ZMatrix& m, std::size_t ncols, std::vector<std::size_t>* pivots) {
  const std::size_t R = m.rows(), C = m.cols();
  std::size_t r = 0;
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a != b)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(a, j), m(b, j));
  };
  for (std::size_t c = 0; c < ncols && r < R; ++c) {
    while (true) {
      std::size_t best = R;
      for (std::size_t i = r; i < R; ++i)
        if (m(i, c) != 0 && (best == R || abs(m(i, c)) < abs(m(best, c)))) best = i;
      if (best == R) break;
      swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < R; ++i) {
        if (m(i, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
        for (std::size_t j = c; j < C; ++j) m(i, j) -= q * m(r, j);
        if (m(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0)
      for (std::size_t j = 0; j < C; ++j) m(r, j) = -m(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < C; ++j) m(i, j) -= q * m(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

}  // namespace

ZMatrix hermite_normal_form(const ZMatrix& in) {
  ZMatrix m = in;
  std::size_t r = integer_echelon(m, m.cols(), nullptr);
  return m.block(0, 0, r, m.cols());
}

ZMatrix integer_left_kernel(const ZMatrix& in) {
  const std::size_t R = in.rows(), C = in.cols();
  ZMatrix aug(R, C + R);
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) aug(i, j) = in(i, j);
    aug(i, C + i) = 1;
  }
  std::size_t r = integer_echelon(aug, C, nullptr);
  ZMatrix ker(R - r, R);
  for (std::size_t i = r; i < R; ++i)
    for (std::size_t j = 0; j < R; ++j) ker(i - r, j) = aug(i, C + j);
  if (ker.rows() == 0) return ker;
  return hermite_normal_form(ker);
}

}  // namespace brauer

namespace brauer {

long rank_mod_p(const QMatrix& m, unsigned long p) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<unsigned long long> a(R * C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) {
      const Rational& q = m(i, j);
      unsigned long den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
      if (den == 0) return -1;
      unsigned long num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
      Integer inv, pd(den), pp(p);
      mpz_invert(inv.get_mpz_t(), pd.get_mpz_t(), pp.get_mpz_t());
      a[i * C + j] = static_cast<unsigned long long>(num) * inv.get_ui() % p;
    }
  auto pw = [p](unsigned long long b, unsigned long long e) {
    unsigned long long r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && a[piv * C + c] == 0) ++piv;
    if (piv == R) continue;
    if (piv != r)
      for (std::size_t j = 0; j < C; ++j) std::swap(a[piv * C + j], a[r * C + j]);
    unsigned long long inv = pw(a[r * C + c], p - 2);
    for (std::size_t j = c; j < C; ++j) a[r * C + j] = a[r * C + j] * inv % p;
    for (std::size_t i = r + 1; i < R; ++i) {
      unsigned long long f = a[i * C + c];
      if (!f) continue;
      for (std::size_t j = c; j < C; ++j) a[i * C + j] = (a[i * C + j] + (p - f) * a[r * C + j]) % p;
    }
    ++r;
  }
  return static_cast<long>(r);
}

}  // namespace brauer
