#pragma once

// Dense row-major matrices over a semiring. Morphisms X -> Y are
// dim(Y) x dim(X); states are columns, effects are rows.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hopt/errors.hpp"
#include "hopt/scalar.hpp"

namespace hopt {

template <typename T>
class Matrix {
 public:
  using Scalar = T;
  using Traits = ScalarTraits<T>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Traits::zero()) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw EvalError("matrix data length mismatch");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw EvalError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::one();
    return m;
  }

  static Matrix column(std::vector<T> v) {
    const std::size_t n = v.size();
    return Matrix(n, 1, std::move(v));
  }

  static Matrix row(std::vector<T> v) {
    const std::size_t n = v.size();
    return Matrix(1, n, std::move(v));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const T> data() const { return data_; }
  std::span<T> data() { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix col(std::size_t j) const {
    Matrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return Traits::is_zero(x); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Matrix product. Skips zero entries on both sides, which makes products
/// with the 0/1 structural matrices cost O(nnz * cols).
template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  using Traits = ScalarTraits<T>;
  if (a.cols() != b.rows())
    throw EvalError("matrix product shape mismatch: " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  Matrix<T> c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  // nonzero column lists of b's rows are reused across rows of a
  std::vector<std::vector<std::size_t>> nz(b.rows());
  for (std::size_t k = 0; k < b.rows(); ++k)
    for (std::size_t j = 0; j < n; ++j)
      if (!Traits::is_zero(b(k, j))) nz[k].push_back(j);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (Traits::is_zero(aik)) continue;
      for (std::size_t j : nz[k]) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw EvalError("matrix sum shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

inline Matrix<Rational> operator-(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw EvalError("matrix difference shape mismatch");
  Matrix<Rational> c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

inline Matrix<Rational> scale(const Rational& s, const Matrix<Rational>& a) {
  Matrix<Rational> c = a;
  for (auto& x : c.data()) x *= s;
  return c;
}

/// Kronecker product in row-major order: (a ⊗ b)[(i,k),(j,l)] = a[i,j] b[k,l]
/// with pair (i,k) at index i * b.rows() + k.
template <typename T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  using Traits = ScalarTraits<T>;
  Matrix<T> c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T& aij = a(i, j);
      if (Traits::is_zero(aij)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const T& bkl = b(k, l);
          if (Traits::is_zero(bkl)) continue;
          c(i * b.rows() + k, j * b.cols() + l) = aij * bkl;
        }
    }
  return c;
}

/// Column sums; a morphism between causal objects is stochastic iff every
/// entry is 1.
inline std::vector<Rational> column_sums(const Matrix<Rational>& m) {
  std::vector<Rational> s(m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s[j] += m(i, j);
  return s;
}

inline bool is_stochastic(const Matrix<Rational>& m) {
  for (const auto& s : column_sums(m))
    if (s != 1) return false;
  return true;
}

/// Support of a rational matrix (x != 0) in the boolean semiring.
inline Matrix<Boolean> support(const Matrix<Rational>& m) {
  Matrix<Boolean> b(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i) b.data()[i] = Boolean(sgn(m.data()[i]) != 0);
  return b;
}

template <typename T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j ? ", " : "") << ScalarTraits<T>::str(m(i, j));
    os << "]";
  }
  return os << "]";
}

}  // namespace hopt
