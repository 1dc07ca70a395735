#pragma once

// Derived canonical processes. Everything here is assembled from the
// primitive constructors; none of it has a closed-form matrix of its own.

#include <cstddef>
#include <span>
#include <vector>

#include "hopt/term.hpp"

namespace hopt {

// --- wiring over flat lists of objects --------------------------------------

/// Left-nested tensor ((x0 * x1) * x2) * ...; empty list is I.
Obj tensor_list(std::span<const Obj> items);

/// tensor_list(a) * tensor_list(b) -> tensor_list(a ++ b)
Term concat(std::span<const Obj> a, std::span<const Obj> b);

/// tensor_list(a ++ b) -> tensor_list(a) * tensor_list(b)
Term split(std::span<const Obj> a, std::span<const Obj> b);

/// tensor_list(items) -> tensor_list(out) where out[i] = items[perm[i]].
/// Built from adjacent swaps, associators and identities.
Term permute(std::span<const Obj> items, std::span<const std::size_t> perm);

/// Inverse of a term built only from Id, Compose, Tensor, Swap, unitors and
/// associators. Throws TypeError on anything else.
Term invert_structural(const Term& t);

/// (X * Y) * (A * B) -> (X * A) * (Y * B)
Term interchange(const Obj& x, const Obj& y, const Obj& a, const Obj& b);

// --- canonical constructions ------------------------------------------------

/// curry for f : C * A -> B given its factors explicitly:
/// delta(C,A,B) . (static(f) * id(C)) . lunit_inv(C)  :  C -> (A => B)
Term curry_parts(const Term& f, const Obj& c, const Obj& a, const Obj& b);

/// f : C * A -> B  gives  C -> (A => B). Throws TypeError unless the domain
/// is a tensor.
Term curry(const TypedTerm& f);

/// f : A -> B  gives the state I -> (A => B), as curry(f . lunit(A)).
Term hat(const TypedTerm& f);

/// A state rho : I -> B gives its static representation eta(B) . rho.
Term name(const TypedTerm& state);

/// d_A : A -> ((A => I) => I)
Term dualiser(const Obj& a);

/// T_AB : (A => B) -> ((B => I) => (A => I))
Term lift(const Obj& a, const Obj& b);

/// (C => (A => B)) -> ((C * A) => B)
Term phi(const Obj& c, const Obj& a, const Obj& b);

/// ((C * A) => B) -> (C => (A => B)), the curried partial insertion.
Term phi_inv(const Obj& c, const Obj& a, const Obj& b);

/// For f : A' -> A and g : B -> B', the supermap (A => B) -> (A' => B')
/// h |-> g . h . f, built from two sequential-composition supermaps.
Term arrow_functor(const TypedTerm& f, const TypedTerm& g);

// --- decompositions used by the double-dual theorems ------------------------

/// T_AB rebuilt from static currying, a swap and d_B:
/// phi_inv(C,A,I) . (swap(C,A) => I) . phi(A,C,I) . (A => d_B), C = B => I
Term lift_decomposed(const Obj& a, const Obj& b);

/// d_B rebuilt from the lifting process with A = I:
/// ((B => I) => eps(I,I) . runit_inv(I => I)) . T_IB . eta(B)
Term dualiser_decomposed(const Obj& b);

/// m : (A => B) -> (A * (B => I)) => I,  phi(A, B => I, I) . (A => d_B)
Term dual_pairing(const Obj& a, const Obj& b);

/// (f => I) => I for f : X -> Y, a map ((X => I) => I) -> ((Y => I) => I)
Term double_dual_map(const TypedTerm& f);

/// J : A * (A' => I) -> (A => A') => I, built as (m => I) . d_Z with
/// m = dual_pairing(A, A') and Z = A * (A' => I).
Term pairing_iso(const Obj& a, const Obj& a2);

/// The same map as the curried evaluation (rho * pi) * h |-> pi(h(rho)).
Term pairing_iso_curried(const Obj& a, const Obj& a2);

/// Inverse of pairing_iso: inv(d_Z) . (inv(m) => I).
Term pairing_iso_inverse(const Obj& a, const Obj& a2);

/// Compose a chain given in application order: steps[0] runs first.
Term chain(std::span<const Term> steps);

}  // namespace hopt
