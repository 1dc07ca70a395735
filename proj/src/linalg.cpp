#include "hopt/linalg.hpp"

#include <utility>

namespace hopt::linalg {

namespace {

// Gauss-Jordan on the first `ncols` columns of m; remaining columns ride
// along. Returns pivot columns.
std::vector<std::size_t> eliminate(QMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const std::size_t rows = m.rows();
  const std::size_t width = m.cols();
  for (std::size_t col = 0; col < ncols && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && sgn(m(p, col)) == 0) ++p;
    if (p == rows) continue;
    if (p != row)
      for (std::size_t j = 0; j < width; ++j) std::swap(m(p, j), m(row, j));
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < width; ++j)
      if (sgn(m(row, j)) != 0) m(row, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || sgn(m(i, col)) == 0) continue;
      const Rational factor = m(i, col);
      for (std::size_t j = col; j < width; ++j)
        if (sgn(m(row, j)) != 0) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rref rref(QMatrix m) {
  auto pivots = eliminate(m, m.cols());
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const QMatrix& m) { return rref(m).pivot_cols.size(); }

bool full_column_rank(const QMatrix& m) { return rank(m) == m.cols(); }

QMatrix nullspace(const QMatrix& m) {
  const Rref r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  QMatrix basis(n, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) basis(r.pivot_cols[i], k) = -r.reduced(i, f);
  }
  return basis;
}

SolveResult solve(const QMatrix& m, const QMatrix& b) {
  if (b.rows() != m.rows() || b.cols() != 1) throw EvalError("solve: rhs must be a column of matching height");
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  // [m | b | I] so that zero rows of the reduced m expose left-null vectors
  QMatrix aug(rows, n + 1 + rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b(i, 0);
    aug(i, n + 1 + i) = 1;
  }
  const auto pivots = eliminate(aug, n);
  for (std::size_t i = pivots.size(); i < rows; ++i) {
    if (sgn(aug(i, n)) != 0) {
      QMatrix y(1, rows);
      const Rational inv = 1 / aug(i, n);
      for (std::size_t k = 0; k < rows; ++k) y(0, k) = aug(i, n + 1 + k) * inv;
      return {std::nullopt, std::move(y)};
    }
  }
  QMatrix x(n, 1);
  for (std::size_t i = 0; i < pivots.size(); ++i) x(pivots[i], 0) = aug(i, n);
  return {std::move(x), std::nullopt};
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = eliminate(aug, n);
  if (pivots.size() != n) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

bool is_invertible(const QMatrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

QMatrix hcat(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw EvalError("hcat: row count mismatch");
  QMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

QMatrix column_basis(const QMatrix& m) {
  const Rref r = rref(m);
  QMatrix basis(m.rows(), r.pivot_cols.size());
  for (std::size_t k = 0; k < r.pivot_cols.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) basis(i, k) = m(i, r.pivot_cols[k]);
  return basis;
}

}  // namespace hopt::linalg
