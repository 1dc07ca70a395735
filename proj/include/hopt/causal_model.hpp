#pragma once

// Causal state and effect spaces. In causal mode every object gets an affine
// space of causal states, generated from the bases by
//   C_I = {1},  C_A = {v : sum v = 1},  C_{X*Y} = aff(C_X (x) C_Y),
//   C_{X=>Y} = (C_X (x) C_Y*)*,  S* = {e : e.s = 1 for all s in S},
// all in the native coordinates of each object. In full mode every space is
// the whole vector space.

#include <map>
#include <string>

#include "hopt/semantics.hpp"

namespace hopt {

/// point + span(directions); directions are linearly independent columns.
struct AffineSpace {
  QMatrix point;
  QMatrix directions;

  std::size_t ambient() const { return point.rows(); }
  std::size_t affine_dim() const { return directions.cols(); }
  bool is_point() const { return directions.cols() == 0; }
  bool contains(const QMatrix& v) const;
  /// Basis of the linear span of the space.
  QMatrix span() const;
  std::size_t span_rank() const { return span().cols(); }
  /// point + directions * coeffs
  QMatrix at(const QMatrix& coeffs) const;
  /// The whole space R^n (point 0).
  static AffineSpace linear(std::size_t n);
};

/// Affine hull of products.
AffineSpace tensor_space(const AffineSpace& s, const AffineSpace& t);

/// {e : e.p = 1, e.d = 0}. Throws Inapplicable when empty (0 in the hull).
AffineSpace dual_space(const AffineSpace& s);

class CausalModel {
 public:
  explicit CausalModel(const Interpretation& interp) : interp_(interp) {}

  const Interpretation& interp() const { return interp_; }
  Mode mode() const { return interp_.mode(); }

  /// Causal states on obj. Throws Inapplicable in causal mode when obj
  /// mentions a base that is not flagged causal.
  const AffineSpace& states(const Obj& obj);
  /// Causal effects on obj, as covectors in the basis of obj.
  const AffineSpace& effects(const Obj& obj);

 private:
  AffineSpace compute_states(const Obj& obj);

  const Interpretation& interp_;
  std::map<std::string, AffineSpace> states_;
  std::map<std::string, AffineSpace> effects_;
};

}  // namespace hopt
