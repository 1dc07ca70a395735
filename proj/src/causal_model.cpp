#include "hopt/causal_model.hpp"

#include "hopt/errors.hpp"

namespace hopt {

bool AffineSpace::contains(const QMatrix& v) const {
  if (v.rows() != ambient() || v.cols() != 1) return false;
  if (is_point()) return v == point;
  return linalg::solve(directions, v - point).feasible();
}

QMatrix AffineSpace::span() const {
  if (directions.cols() == 0) return linalg::column_basis(point);
  return linalg::column_basis(linalg::hcat(point, directions));
}

QMatrix AffineSpace::at(const QMatrix& coeffs) const {
  if (is_point()) return point;
  return point + directions * coeffs;
}

AffineSpace AffineSpace::linear(std::size_t n) { return {QMatrix(n, 1), QMatrix::identity(n)}; }

AffineSpace tensor_space(const AffineSpace& s, const AffineSpace& t) {
  QMatrix p = kron(s.point, t.point);
  QMatrix dirs(p.rows(), 0);
  if (!s.is_point()) dirs = linalg::hcat(dirs, kron(s.directions, t.point));
  if (!t.is_point()) dirs = linalg::hcat(dirs, kron(s.point, t.directions));
  if (!s.is_point() && !t.is_point()) dirs = linalg::hcat(dirs, kron(s.directions, t.directions));
  if (dirs.cols() > 0) dirs = linalg::column_basis(dirs);
  return {std::move(p), std::move(dirs)};
}

AffineSpace dual_space(const AffineSpace& s) {
  const QMatrix gens = s.is_point() ? s.point : linalg::hcat(s.point, s.directions);
  const QMatrix constraints = gens.transpose();
  QMatrix rhs(constraints.rows(), 1);
  rhs(0, 0) = 1;
  auto sol = linalg::solve(constraints, rhs);
  if (!sol.feasible()) throw Inapplicable("dual of a space whose affine hull contains 0 is empty");
  return {std::move(*sol.solution), linalg::nullspace(constraints)};
}

const AffineSpace& CausalModel::states(const Obj& obj) {
  const std::string key = obj.str();
  if (auto it = states_.find(key); it != states_.end()) return it->second;
  AffineSpace s = compute_states(obj);
  return states_.emplace(key, std::move(s)).first->second;
}

const AffineSpace& CausalModel::effects(const Obj& obj) {
  const std::string key = obj.str();
  if (auto it = effects_.find(key); it != effects_.end()) return it->second;
  AffineSpace e = mode() == Mode::Full ? AffineSpace::linear(interp_.dim(obj)) : dual_space(states(obj));
  return effects_.emplace(key, std::move(e)).first->second;
}

AffineSpace CausalModel::compute_states(const Obj& obj) {
  const std::size_t n = interp_.dim(obj);
  if (mode() == Mode::Full) return AffineSpace::linear(n);
  switch (obj.kind()) {
    case ObjKind::Unit:
      return {QMatrix{{1}}, QMatrix(1, 0)};
    case ObjKind::Base: {
      if (!interp_.sig().find_base(obj.name())->causal)
        throw Inapplicable("base " + obj.name() + " is not causal");
      QMatrix p(n, 1);
      p(0, 0) = 1;
      QMatrix dirs(n, n - 1);
      for (std::size_t i = 1; i < n; ++i) {
        dirs(0, i - 1) = -1;
        dirs(i, i - 1) = 1;
      }
      return {std::move(p), std::move(dirs)};
    }
    case ObjKind::Tensor:
      return tensor_space(states(obj.left()), states(obj.right()));
    case ObjKind::Arrow:
      return dual_space(tensor_space(states(obj.left()), effects(obj.right())));
  }
  throw EvalError("unknown object kind");
}

}  // namespace hopt
