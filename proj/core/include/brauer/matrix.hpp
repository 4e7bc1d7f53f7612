#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace brauer {

using Integer = mpz_class;
using Rational = mpq_class;

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("Matrix: data size mismatch");
  }
  Matrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
      for (long v : r) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix column(std::size_t c) const {
    Matrix out(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) out(i, 0) = (*this)(i, c);
    return out;
  }

  Matrix columns(const std::vector<std::size_t>& idx) const {
    Matrix out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
    return out;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
    Matrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }
  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix scaled(const T& s) const {
    Matrix out(*this);
    for (auto& v : out.data_) v *= s;
    return out;
  }
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool is_zero() const {
    for (const auto& v : data_)
      if (v != 0) return false;
    return true;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << "]\n";
  }
  return os;
}

QMatrix to_rational(const ZMatrix& m);
// Throws if an entry is not integral.
ZMatrix to_integer(const QMatrix& m);

QMatrix hstack(const QMatrix& a, const QMatrix& b);
QMatrix vstack(const QMatrix& a, const QMatrix& b);
template <class T>
Matrix<T> direct_sum(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
std::size_t rank(QMatrix m);
// Columns form a basis of {x : m x = 0}; each basis vector has a 1 in its free
// coordinate, zeros in the other free coordinates.
QMatrix kernel(const QMatrix& m);
// Columns form a basis of the column space, in reduced column echelon form.
QMatrix column_space(const QMatrix& m);
Rational determinant(QMatrix m);
// Rank of m reduced modulo the prime p (< 2^31); returns -1 if a denominator
// is divisible by p.
long rank_mod_p(const QMatrix& m, unsigned long p);
Integer determinant(const ZMatrix& m);  // Bareiss
QMatrix inverse(const QMatrix& m);
// Solves a x = b for x (a may be rectangular with full column rank). Throws if
// there is no solution.
QMatrix solve(const QMatrix& a, const QMatrix& b);
// Matrix of `action` on the invariant column span of `basis`.
inline QMatrix restrict_action(const QMatrix& basis, const QMatrix& action) {
  return solve(basis, action * basis);
}
QMatrix intersect_column_spaces(const QMatrix& a, const QMatrix& b);

// Basis (rows) of the integer left kernel {v in Z^r : v m = 0}, in Hermite
// normal form.
ZMatrix integer_left_kernel(const ZMatrix& m);
// Row-style Hermite normal form (upper triangular, positive pivots, reduced
// entries above pivots); zero rows dropped.
ZMatrix hermite_normal_form(const ZMatrix& m);

}  // namespace brauer
