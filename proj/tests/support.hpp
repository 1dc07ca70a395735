#pragma once

// Shared fixtures for the unit tests.

#include <cstdint>
#include <string>
#include <vector>

#include "hopt/semantics.hpp"

namespace hopt::testing {

inline Obj B(const std::string& n) { return Obj::base(n); }

/// Bases A, B, C (causal) of the given dimensions.
inline Signature abc(std::size_t a, std::size_t b, std::size_t c = 1) {
  Signature sig;
  sig.add_base("A", a, true).add_base("B", b, true).add_base("C", c, true);
  return sig;
}

inline QMatrix basis_column(std::size_t n, std::size_t i) {
  QMatrix v(n, 1);
  v(i, 0) = 1;
  return v;
}

/// Direct formula for the static vector, independent of static_vector().
inline QMatrix hat_formula(const QMatrix& f) {
  QMatrix v(f.rows() * f.cols(), 1);
  for (std::size_t a = 0; a < f.cols(); ++a)
    for (std::size_t b = 0; b < f.rows(); ++b) v(a * f.rows() + b, 0) = f(b, a);
  return v;
}

inline std::vector<std::size_t> small_dims() { return {1, 2, 3}; }

}  // namespace hopt::testing
