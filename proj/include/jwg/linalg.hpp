#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "jwg/errors.hpp"
#include "jwg/gf.hpp"

namespace jwg {

/// Dense row-major matrix over one field.
struct Matrix {
  uint32_t rows = 0, cols = 0;
  std::vector<Fe> a;

  Matrix() = default;
  Matrix(uint32_t r, uint32_t c) : rows(r), cols(c), a(size_t(r) * c, Fe{0}) {}

  Fe& at(uint32_t r, uint32_t c) { return a[size_t(r) * cols + c]; }
  Fe at(uint32_t r, uint32_t c) const { return a[size_t(r) * cols + c]; }

  static Matrix identity(const Field& f, uint32_t n) {
    Matrix m(n, n);
    for (uint32_t k = 0; k < n; ++k) m.at(k, k) = f.one();
    return m;
  }
};

inline std::vector<Fe> mat_vec(const Field& f, const Matrix& m, std::span<const Fe> x) {
  if (x.size() != m.cols) raise(Errc::DegreeMismatch, "mat_vec size mismatch");
  std::vector<Fe> y(m.rows, f.zero());
  for (uint32_t r = 0; r < m.rows; ++r) {
    Fe acc = f.zero();
    for (uint32_t c = 0; c < m.cols; ++c) acc = f.add(acc, f.mul(m.at(r, c), x[c]));
    y[r] = acc;
  }
  return y;
}

namespace detail {

// In-place reduction to row echelon form.  Pivot choice is the first nonzero
// entry in column order, so the elimination (and everything derived from it)
// is deterministic.  Returns pivot columns; if `track_sign` is nonnull it
// accumulates the row-swap parity.
inline std::vector<uint32_t> echelonize(const Field& f, Matrix& m, bool reduced,
                                        int* track_sign) {
  std::vector<uint32_t> pivot_cols;
  uint32_t row = 0;
  for (uint32_t col = 0; col < m.cols && row < m.rows; ++col) {
    uint32_t pr = row;
    while (pr < m.rows && m.at(pr, col) == f.zero()) ++pr;
    if (pr == m.rows) continue;
    if (pr != row) {
      for (uint32_t c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(row, c));
      if (track_sign) *track_sign = -*track_sign;
    }
    Fe pivot = m.at(row, col);
    Fe pinv = f.inv(pivot);
    if (reduced) {
      for (uint32_t c = col; c < m.cols; ++c) m.at(row, c) = f.mul(m.at(row, c), pinv);
    }
    for (uint32_t r = reduced ? 0 : row + 1; r < m.rows; ++r) {
      if (r == row) continue;
      Fe factor = m.at(r, col);
      if (factor == f.zero()) continue;
      Fe scale = reduced ? factor : f.mul(factor, pinv);
      for (uint32_t c = col; c < m.cols; ++c)
        m.at(r, c) = f.sub(m.at(r, c), f.mul(scale, m.at(row, c)));
    }
    pivot_cols.push_back(col);
    ++row;
  }
  return pivot_cols;
}

}  // namespace detail

inline Fe determinant(const Field& f, Matrix m) {
  if (m.rows != m.cols) raise(Errc::NonSquare, "determinant of non-square matrix");
  int sign = 1;
  auto pivots = detail::echelonize(f, m, /*reduced=*/false, &sign);
  if (pivots.size() < m.rows) return f.zero();
  Fe det = f.one();
  for (uint32_t k = 0; k < m.rows; ++k) det = f.mul(det, m.at(k, k));
  return sign < 0 ? f.neg(det) : det;
}

inline uint32_t matrix_rank(const Field& f, Matrix m) {
  return static_cast<uint32_t>(detail::echelonize(f, m, false, nullptr).size());
}

/// Unique solution of M x = b for square nonsingular M.
inline std::vector<Fe> solve_unique(const Field& f, Matrix m, std::vector<Fe> b) {
  if (m.rows != m.cols) raise(Errc::NonSquare, "solve_unique needs a square matrix");
  if (b.size() != m.rows) raise(Errc::DegreeMismatch, "rhs size mismatch");
  uint32_t n = m.rows;
  // augment and fully reduce
  Matrix aug(n, n + 1);
  for (uint32_t r = 0; r < n; ++r) {
    for (uint32_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n) = b[r];
  }
  auto pivots = detail::echelonize(f, aug, /*reduced=*/true, nullptr);
  if (pivots.size() < n || pivots[n - 1] == n)
    raise(Errc::SingularMatrix, "matrix is singular");
  std::vector<Fe> x(n, f.zero());
  for (uint32_t r = 0; r < n; ++r) x[pivots[r]] = aug.at(r, n);
  return x;
}

/// Basis of {t : M t = 0}; empty iff rank = cols.  One vector per free
/// column, in column order, with the free coordinate normalized to 1.
inline std::vector<std::vector<Fe>> nullspace_basis(const Field& f, Matrix m) {
  uint32_t n = m.cols;
  auto pivots = detail::echelonize(f, m, /*reduced=*/true, nullptr);
  std::vector<bool> is_pivot(n, false);
  for (uint32_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Fe>> basis;
  for (uint32_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Fe> v(n, f.zero());
    v[free_col] = f.one();
    for (uint32_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = f.neg(m.at(r, free_col));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace jwg
