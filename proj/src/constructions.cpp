#include "hopt/constructions.hpp"

#include <numeric>
#include <string>

#include "hopt/errors.hpp"

namespace hopt {

Obj tensor_list(std::span<const Obj> items) {
  if (items.empty()) return Obj::unit();
  Obj acc = items[0];
  for (std::size_t i = 1; i < items.size(); ++i) acc = acc * items[i];
  return acc;
}

Term concat(std::span<const Obj> a, std::span<const Obj> b) {
  if (b.empty()) return Term::runit(tensor_list(a));
  if (a.empty()) return Term::lunit(tensor_list(b));
  if (b.size() == 1) return Term::id(tensor_list(a) * b[0]);
  const auto init = b.first(b.size() - 1);
  const Obj& last = b.back();
  return Term::compose(Term::tensor(concat(a, init), Term::id(last)),
                       Term::assoc_inv(tensor_list(a), tensor_list(init), last));
}

Term split(std::span<const Obj> a, std::span<const Obj> b) { return invert_structural(concat(a, b)); }

namespace {

// Swap the items at positions i and i+1 of a flat list.
Term adjacent_swap(std::span<const Obj> items, std::size_t i) {
  const Obj& x = items[i];
  const Obj& y = items[i + 1];
  Term step = Term::swap(x, y);
  if (i > 0) {
    const Obj prefix = tensor_list(items.first(i));
    step = chain(std::vector<Term>{Term::assoc(prefix, x, y), Term::tensor(Term::id(prefix), step),
                                   Term::assoc_inv(prefix, y, x)});
  }
  for (std::size_t k = i + 2; k < items.size(); ++k) step = Term::tensor(step, Term::id(items[k]));
  return step;
}

}  // namespace

Term permute(std::span<const Obj> items, std::span<const std::size_t> perm) {
  if (perm.size() != items.size()) throw TypeError("permute: permutation length mismatch");
  // rank[j] = target position of source item j
  std::vector<std::size_t> rank(items.size(), items.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= items.size() || rank[perm[i]] != items.size())
      throw TypeError("permute: not a permutation");
    rank[perm[i]] = i;
  }
  std::vector<Obj> current(items.begin(), items.end());
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Term> steps;
  // bubble sort by target rank; each exchange is one adjacent swap
  for (std::size_t pass = 0; pass + 1 < order.size(); ++pass) {
    for (std::size_t i = 0; i + 1 < order.size() - pass; ++i) {
      if (rank[order[i]] > rank[order[i + 1]]) {
        steps.push_back(adjacent_swap(current, i));
        std::swap(order[i], order[i + 1]);
        std::swap(current[i], current[i + 1]);
      }
    }
  }
  if (steps.empty()) return Term::id(tensor_list(items));
  return chain(steps);
}

Term invert_structural(const Term& t) {
  const auto& o = t.objs();
  switch (t.kind()) {
    case TermKind::Id:
      return t;
    case TermKind::Compose:
      return Term::compose(invert_structural(t.args()[1]), invert_structural(t.args()[0]));
    case TermKind::Tensor:
      return Term::tensor(invert_structural(t.args()[0]), invert_structural(t.args()[1]));
    case TermKind::Swap:
      return Term::swap(o[1], o[0]);
    case TermKind::LUnit:
      return Term::lunit_inv(o[0]);
    case TermKind::LUnitInv:
      return Term::lunit(o[0]);
    case TermKind::RUnit:
      return Term::runit_inv(o[0]);
    case TermKind::RUnitInv:
      return Term::runit(o[0]);
    case TermKind::Assoc:
      return Term::assoc_inv(o[0], o[1], o[2]);
    case TermKind::AssocInv:
      return Term::assoc(o[0], o[1], o[2]);
    default:
      throw TypeError("invert_structural: '" + t.str() + "' is not a structural isomorphism");
  }
}

Term interchange(const Obj& x, const Obj& y, const Obj& a, const Obj& b) {
  const std::vector<Obj> left{x, y};
  const std::vector<Obj> right{a, b};
  const std::vector<Obj> all{x, y, a, b};
  const std::vector<Obj> out_left{x, a};
  const std::vector<Obj> out_right{y, b};
  const std::vector<std::size_t> perm{0, 2, 1, 3};
  return chain(std::vector<Term>{concat(left, right), permute(all, perm), split(out_left, out_right)});
}

Term chain(std::span<const Term> steps) {
  if (steps.empty()) throw TypeError("chain: empty composition");
  Term acc = steps[0];
  for (std::size_t i = 1; i < steps.size(); ++i) acc = Term::compose(steps[i], acc);
  return acc;
}

Term curry_parts(const Term& f, const Obj& c, const Obj& a, const Obj& b) {
  return chain(std::vector<Term>{Term::lunit_inv(c), Term::tensor(Term::static_of(f), Term::id(c)),
                                 Term::delta(c, a, b)});
}

Term curry(const TypedTerm& f) {
  if (!f.dom.is_tensor())
    throw TypeError("curry: domain of '" + f.term.str() + "' is " + f.dom.str() + ", not a tensor");
  return curry_parts(f.term, f.dom.left(), f.dom.right(), f.cod);
}

Term hat(const TypedTerm& f) {
  return curry_parts(Term::compose(f.term, Term::lunit(f.dom)), Obj::unit(), f.dom, f.cod);
}

Term name(const TypedTerm& state) {
  if (!state.dom.is_unit())
    throw TypeError("name: '" + state.term.str() + "' is not a state (domain " + state.dom.str() + ")");
  return Term::compose(Term::eta(state.cod), state.term);
}

Term dualiser(const Obj& a) {
  const Obj I = Obj::unit();
  const Obj a_dual = dual(a);
  // ev : A * (A => I) -> I, insertion after moving the effect to the front
  const Term ev = Term::compose(Term::eps(a, I), Term::swap(a, a_dual));
  return curry_parts(ev, a, a_dual, I);
}

Term lift(const Obj& a, const Obj& b) {
  const Obj I = Obj::unit();
  const Obj h = arrow(a, b);
  const Obj e = dual(b);
  // ((A => B) * (B => I)) * A -> I : apply the process, then the effect
  const Term apply = chain(std::vector<Term>{
      Term::tensor(Term::swap(h, e), Term::id(a)), Term::assoc(e, h, a),
      Term::tensor(Term::id(e), Term::eps(a, b)), Term::eps(b, I)});
  const Term partial = curry_parts(apply, h * e, a, I);
  return curry_parts(partial, h, e, dual(a));
}

Term phi(const Obj& c, const Obj& a, const Obj& b) {
  const Obj x = arrow(c, arrow(a, b));
  const Term apply = chain(std::vector<Term>{Term::assoc_inv(x, c, a),
                                             Term::tensor(Term::eps(c, arrow(a, b)), Term::id(a)),
                                             Term::eps(a, b)});
  return curry_parts(apply, x, c * a, b);
}

Term phi_inv(const Obj& c, const Obj& a, const Obj& b) {
  return curry_parts(Term::delta(c, a, b), arrow(c * a, b), c, arrow(a, b));
}

Term arrow_functor(const TypedTerm& f, const TypedTerm& g) {
  // f : A' -> A, g : B -> B'
  const Obj& a2 = f.dom;
  const Obj& a = f.cod;
  const Obj& b = g.dom;
  const Obj& b2 = g.cod;
  const Obj x = arrow(a, b);
  const Obj mid = arrow(a2, b);
  const Term pre = chain(std::vector<Term>{Term::runit_inv(x), Term::tensor(Term::id(x), hat(f)),
                                           Term::seq(a2, a, b)});
  const Term post = chain(std::vector<Term>{Term::lunit_inv(mid), Term::tensor(hat(g), Term::id(mid)),
                                            Term::seq(a2, b, b2)});
  return Term::compose(post, pre);
}

}  // namespace hopt

namespace hopt {

namespace {

TypedTerm typed_id(const Obj& a) { return {Term::id(a), a, a}; }

}  // namespace

Term lift_decomposed(const Obj& a, const Obj& b) {
  const Obj I = Obj::unit();
  const Obj c = dual(b);
  return chain(std::vector<Term>{
      arrow_functor(typed_id(a), {dualiser(b), b, double_dual(b)}),
      phi(a, c, I),
      arrow_functor({Term::swap(c, a), c * a, a * c}, typed_id(I)),
      phi_inv(c, a, I),
  });
}

Term dualiser_decomposed(const Obj& b) {
  const Obj I = Obj::unit();
  const Obj ii = arrow(I, I);
  const TypedTerm collapse{Term::compose(Term::eps(I, I), Term::runit_inv(ii)), ii, I};
  return chain(std::vector<Term>{Term::eta(b), lift(I, b), arrow_functor(typed_id(dual(b)), collapse)});
}

Term dual_pairing(const Obj& a, const Obj& b) {
  const Obj I = Obj::unit();
  return Term::compose(phi(a, dual(b), I), arrow_functor(typed_id(a), {dualiser(b), b, double_dual(b)}));
}

Term double_dual_map(const TypedTerm& f) {
  const Obj I = Obj::unit();
  const TypedTerm pre{arrow_functor(f, typed_id(I)), dual(f.cod), dual(f.dom)};
  return arrow_functor(pre, typed_id(I));
}

Term pairing_iso(const Obj& a, const Obj& a2) {
  const Obj I = Obj::unit();
  const Obj z = a * dual(a2);
  const TypedTerm m{dual_pairing(a, a2), arrow(a, a2), dual(z)};
  return Term::compose(arrow_functor(m, typed_id(I)), dualiser(z));
}

Term pairing_iso_curried(const Obj& a, const Obj& a2) {
  const Obj I = Obj::unit();
  const Obj e = dual(a2);
  const Obj h = arrow(a, a2);
  const std::vector<Obj> items{a, e, h};
  const std::vector<std::size_t> perm{1, 2, 0};
  // (A * E) * H -> (E * H) * A -> E * (H * A) -> E * A' -> I
  const Term apply = chain(std::vector<Term>{
      permute(items, perm), Term::assoc(e, h, a), Term::tensor(Term::id(e), Term::eps(a, a2)),
      Term::eps(a2, I)});
  return curry_parts(apply, a * e, h, I);
}

Term pairing_iso_inverse(const Obj& a, const Obj& a2) {
  const Obj I = Obj::unit();
  const Obj z = a * dual(a2);
  const Term m = dual_pairing(a, a2);
  const TypedTerm m_inv{Term::inverse(m), dual(z), arrow(a, a2)};
  return Term::compose(Term::inverse(dualiser(z)), arrow_functor(m_inv, typed_id(I)));
}

}  // namespace hopt
