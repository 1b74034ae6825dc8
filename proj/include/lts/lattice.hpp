#pragma once

// Dense integer/rational matrices and the integer normal forms used for
// lattice computations (central quotients, torsion groups, canonical keys).

#include "lts/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace lts {

using IntVec = std::vector<std::int64_t>;
using RatVec = std::vector<Rational>;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  // Rows must share one length; an empty list gives a 0 x cols matrix.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0) {
    Matrix m(rows.size(), rows.empty() ? cols : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i].at(j);
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows = 0) {
    Matrix m(cols.empty() ? rows : cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j].at(i);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const;
  std::vector<T> operator*(const std::vector<T>& v) const;

  Matrix operator-(const Matrix& o) const {
    Matrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
    return r;
  }

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> Matrix<T>::operator*(const Matrix& o) const {
  Matrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const T& a = (*this)(i, k);
      if (a == T(0)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

template <typename T>
std::vector<T> Matrix<T>::operator*(const std::vector<T>& v) const {
  std::vector<T> r(rows_, T(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

using IntMatrix = Matrix<std::int64_t>;
using RatMatrix = Matrix<Rational>;

// Checked int64 arithmetic; overflow throws std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

RatMatrix to_rational(const IntMatrix& m);
RatVec to_rational(const IntVec& v);

std::int64_t dot(const IntVec& a, const IntVec& b);
Rational dot(const IntVec& a, const RatVec& b);

Rational determinant(RatMatrix m);
// Exact; the empty 0x0 determinant is 1.
std::int64_t determinant(const IntMatrix& m);

std::size_t rank(RatMatrix m);
std::size_t rank(const IntMatrix& m);
std::size_t rank_of_rows(const std::vector<IntVec>& rows, std::size_t dim);

std::optional<RatMatrix> inverse(const RatMatrix& m);
// Inverse over the integers, if the matrix is unimodular.
std::optional<IntMatrix> integer_inverse(const IntMatrix& m);

// Basis of {v : m v = 0} over Q.
std::vector<RatVec> nullspace(RatMatrix m);

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};
SmithForm smith_normal_form(const IntMatrix& a);

// Canonical basis of the lattice spanned by the columns of `m`: the columns of
// the returned matrix are the rows of the reduced row-Hermite form of m^T.
IntMatrix column_hermite_form(const IntMatrix& m);

// Reduce each coordinate into [0, 1).
RatVec reduce_mod_one(RatVec v);

std::int64_t lcm_of_denominators(const RatVec& v);

}  // namespace lts
