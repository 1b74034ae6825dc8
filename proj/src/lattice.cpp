#include "lts/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace lts {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in lattice arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in lattice arithmetic");
  return r;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

RatVec to_rational(const IntVec& v) { return RatVec(v.begin(), v.end()); }

std::int64_t dot(const IntVec& a, const IntVec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

Rational dot(const IntVec& a, const RatVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) s += a[i] * b[i];
  }
  return s;
}

namespace {

// In-place row echelon form; returns the rank and accumulates the determinant
// factor (sign of row swaps times pivots) when `det` is non-null.
std::size_t eliminate(RatMatrix& m, Rational* det) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  if (det) *det = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) {
      if (det) *det = 0;
      continue;
    }
    if (pivot != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
      if (det) *det = -*det;
    }
    const Rational p = m(r, c);
    if (det) *det *= p;
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / p;
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace

Rational determinant(RatMatrix m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  Rational det;
  const std::size_t r = eliminate(m, &det);
  return r == m.rows() ? det : Rational(0);
}

std::int64_t determinant(const IntMatrix& m) {
  const Rational d = determinant(to_rational(m));
  return static_cast<std::int64_t>(boost::multiprecision::numerator(d));
}

std::size_t rank(RatMatrix m) { return eliminate(m, nullptr); }

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::size_t rank_of_rows(const std::vector<IntVec>& rows, std::size_t dim) {
  if (rows.empty()) return 0;
  return rank(IntMatrix::from_rows(rows, dim));
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (!m.square()) return std::nullopt;
  const std::size_t n = m.rows();
  RatMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != c)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(pivot, j), a(c, j));
    const Rational p = a(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) a(c, j) /= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
  return inv;
}

std::optional<IntMatrix> integer_inverse(const IntMatrix& m) {
  auto inv = inverse(to_rational(m));
  if (!inv) return std::nullopt;
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& q = (*inv)(i, j);
      if (boost::multiprecision::denominator(q) != 1) return std::nullopt;
      r(i, j) = static_cast<std::int64_t>(boost::multiprecision::numerator(q));
    }
  return r;
}

std::vector<RatVec> nullspace(RatMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  // Reduced row echelon form.
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
    const Rational p = m(r, c);
    for (std::size_t j = 0; j < cols; ++j) m(r, j) /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<RatVec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    RatVec v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -m(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] -= q * row[src]
void add_row_multiple(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) = checked_add(m(dst, j), -checked_mul(q, m(src, j)));
}

void add_col_multiple(IntMatrix& m, std::size_t dst, std::size_t src, std::int64_t q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) = checked_add(m(i, dst), -checked_mul(q, m(i, src)));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm s{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& d = s.D;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool restart = true;
    while (restart) {
      restart = false;
      // Bring the smallest nonzero entry of the trailing block to (t, t).
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (d(i, j) != 0 && (bi == m || std::llabs(d(i, j)) < std::llabs(d(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) return s;
      swap_rows(d, t, bi);
      swap_rows(s.U, t, bi);
      swap_cols(d, t, bj);
      swap_cols(s.V, t, bj);

      for (std::size_t i = t + 1; i < m; ++i) {
        const std::int64_t q = d(i, t) / d(t, t);
        add_row_multiple(d, i, t, q);
        add_row_multiple(s.U, i, t, q);
        if (d(i, t) != 0) restart = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        const std::int64_t q = d(t, j) / d(t, t);
        add_col_multiple(d, j, t, q);
        add_col_multiple(s.V, j, t, q);
        if (d(t, j) != 0) restart = true;
      }
      if (restart) continue;
      // Divisibility: fold any offending row into row t and repeat.
      for (std::size_t i = t + 1; i < m && !restart; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row_multiple(d, t, i, -1);
            add_row_multiple(s.U, t, i, -1);
            restart = true;
            break;
          }
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m; ++j) s.U(t, j) = -s.U(t, j);
    }
  }
  return s;
}

IntMatrix column_hermite_form(const IntMatrix& m) {
  IntMatrix a = m.transpose();  // generators as rows
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a(i, c) != 0 && (best == rows || std::llabs(a(i, c)) < std::llabs(a(best, c)))) best = i;
      if (best == rows) break;
      swap_rows(a, r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        add_row_multiple(a, i, r, floor_div(a(i, c), a(r, c)));
        if (a(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
    for (std::size_t i = 0; i < r; ++i) add_row_multiple(a, i, r, floor_div(a(i, c), a(r, c)));
    ++r;
  }
  IntMatrix basis(cols, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) basis(j, i) = a(i, j);
  return basis;
}

RatVec reduce_mod_one(RatVec v) {
  for (auto& x : v) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    BigInt rem = num % den;
    if (rem < 0) rem += den;
    x = Rational(rem, den);
  }
  return v;
}

std::int64_t lcm_of_denominators(const RatVec& v) {
  std::int64_t l = 1;
  for (const auto& x : v) {
    const auto d = static_cast<std::int64_t>(boost::multiprecision::denominator(x));
    l = std::lcm(l, d);
  }
  return l;
}

}  // namespace lts
