#pragma once

// Exact linear algebra over the rationals: reduced row echelon form and the
// rank / nullspace / solve / inverse queries the property checks rely on.

#include <cstddef>
#include <optional>
#include <vector>

#include "hopt/matrix.hpp"

namespace hopt::linalg {

using QMatrix = Matrix<Rational>;

struct Rref {
  QMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

Rref rref(QMatrix m);

std::size_t rank(const QMatrix& m);

bool full_column_rank(const QMatrix& m);

/// Columns form a basis of {x : m x = 0}; cols() == 0 when trivial.
QMatrix nullspace(const QMatrix& m);

/// Either a particular solution x of m x = b, or a certificate y (a row)
/// with y m = 0 and y b = 1 proving that none exists.
struct SolveResult {
  std::optional<QMatrix> solution;
  std::optional<QMatrix> certificate;
  bool feasible() const { return solution.has_value(); }
};

SolveResult solve(const QMatrix& m, const QMatrix& b);

std::optional<QMatrix> inverse(const QMatrix& m);

bool is_invertible(const QMatrix& m);

/// Horizontal concatenation; row counts must agree.
QMatrix hcat(const QMatrix& a, const QMatrix& b);

/// A column basis of the span of the columns of m.
QMatrix column_basis(const QMatrix& m);

}  // namespace hopt::linalg
