#pragma once

// Dense exact linear algebra over the rationals / integers.
// Sizes here are tiny (ambient dimensions <= ~16), so plain Gaussian
// elimination with exact arithmetic is the right tool.

#include "polyhom/rational.hpp"

#include <optional>
#include <vector>

namespace polyhom {

using RatMat = std::vector<RatVec>;  // row-major
using IntMat = std::vector<IntVec>;  // row-major

inline RatMat rat_identity(std::size_t n) {
  RatMat m(n, RatVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMat int_identity(std::size_t n) {
  IntMat m(n, IntVec(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RatMat to_rat(const IntMat& a) {
  RatMat r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i].reserve(a[i].size());
    for (const auto& x : a[i]) r[i].emplace_back(x);
  }
  return r;
}

// Row-reduce in place; returns rank. Keeps track of pivot columns if asked.
inline std::size_t row_reduce(RatMat& m, std::vector<std::size_t>* pivot_cols = nullptr) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    Rat inv = m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return r;
}

inline std::size_t rat_rank(RatMat m) { return row_reduce(m); }

inline std::size_t int_rank(const IntMat& m) { return rat_rank(to_rat(m)); }

// Determinant by fraction-free (Bareiss) elimination over cpp_int.
inline Int int_det(IntMat a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline Rat rat_det(const RatMat& a) {
  // Clear denominators row by row, then use the integer determinant.
  const std::size_t n = a.size();
  IntMat b(n, IntVec(n));
  Rat scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Int l = common_denominator(a[i]);
    scale /= Rat(l);
    for (std::size_t j = 0; j < n; ++j) b[i][j] = numer(a[i][j] * Rat(l));
  }
  return Rat(int_det(std::move(b))) * scale;
}

// Solve A x = b exactly. Returns nullopt when the system is inconsistent;
// free variables (if any) are set to zero.
inline std::optional<RatVec> rat_solve(RatMat a, RatVec b) {
  const std::size_t rows = a.size();
  if (rows == 0) return RatVec{};
  const std::size_t cols = a[0].size();
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::vector<std::size_t> pivots;
  row_reduce(a, &pivots);
  RatVec x(cols, Rat(0));
  for (std::size_t i = 0; i < rows; ++i) {
    bool all_zero = true;
    for (std::size_t j = 0; j < cols; ++j)
      if (a[i][j] != 0) { all_zero = false; break; }
    if (all_zero && a[i][cols] != 0) return std::nullopt;
  }
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    // After full reduction each pivot row reads x_p + (free terms) = rhs;
    // with free vars pinned to 0 the pivot value is just the rhs.
    x[pivots[i]] = a[i][cols];
  }
  return x;
}

// Exact inverse; nullopt if singular.
inline std::optional<RatMat> rat_inverse(const RatMat& a) {
  const std::size_t n = a.size();
  RatMat work(n, RatVec(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) work[i][j] = a[i][j];
    work[i][n + i] = 1;
  }
  std::vector<std::size_t> pivots;
  if (row_reduce(work, &pivots) != n) return std::nullopt;
  // All pivots must land in the left block; one in the identity block means
  // the matrix itself is rank-deficient.
  for (std::size_t i = 0; i < n; ++i)
    if (pivots[i] != i) return std::nullopt;
  RatMat inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = work[i][n + j];
  return inv;
}

// Nullspace basis (exact) of A x = 0, as rows.
inline RatMat rat_nullspace(RatMat a) {
  if (a.empty()) return {};
  const std::size_t cols = a[0].size();
  std::vector<std::size_t> pivots;
  row_reduce(a, &pivots);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  RatMat basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rat rat_dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int int_dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntMat int_mat_mul(const IntMat& a, const IntMat& b) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  IntMat c(n, IntVec(m, Int(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

// Integer matrix inverse for unimodular (det = ±1) matrices.
inline IntMat unimodular_inverse(const IntMat& a) {
  auto inv = rat_inverse(to_rat(a));
  if (!inv) throw std::invalid_argument("unimodular_inverse: singular matrix");
  IntMat r(a.size(), IntVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!is_integral((*inv)[i][j]))
        throw std::invalid_argument("unimodular_inverse: matrix is not unimodular");
      r[i][j] = numer((*inv)[i][j]);
    }
  return r;
}

}  // namespace polyhom
