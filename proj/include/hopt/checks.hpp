#pragma once

// Definitions-as-predicates and theorems-as-tests on concrete models. Every
// check returns a report; a fail verdict always carries a witness that can
// be re-evaluated independently.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hopt/causal_model.hpp"
#include "hopt/semantics.hpp"

namespace hopt {

enum class Verdict { Pass, Fail, Inapplicable };

const char* verdict_name(Verdict v);

struct CheckReport {
  std::string name;
  Verdict verdict = Verdict::Pass;
  nlohmann::json witness;  // null when absent
  nlohmann::json params = nlohmann::json::object();
  std::string note;

  bool passed() const { return verdict == Verdict::Pass; }
  nlohmann::json to_json() const;
};

// --- axioms and the structure theorem -----------------------------------

/// eps . (hat(f) * id) . lunit_inv = f for the generator `f`.
CheckReport check_insertion(const std::string& gen, const Interpretation& interp);

/// E^C_{A,B} : g |-> eps . (g * id_A) has full column rank.
CheckReport check_complete_injectivity(const Obj& a, const Obj& b, const Obj& c, const Interpretation& interp);

/// eps_{A,C} . (seq * id) = eps_{B,C} . (id * eps_{A,B}) . assoc
CheckReport check_seq_equation(const Obj& a, const Obj& b, const Obj& c, const Interpretation& interp);

/// eps . (par * id) = (eps * eps) . interchange
CheckReport check_par_equation(const Obj& a, const Obj& a2, const Obj& b, const Obj& b2,
                               const Interpretation& interp);

/// eps_{I,A} . runit_inv and eta_A are two-sided inverses.
CheckReport check_eps_unit_iso(const Obj& a, const Interpretation& interp);

/// For a generator h : C * A -> B: eps . (curry(h) * id) = h, and curry(h)
/// is the only solution of that equation (exact solve).
CheckReport check_currying(const std::string& gen, const Interpretation& interp);

/// Composition laws for the generators f : A -> B, g : B -> C, k : C -> D:
/// associativity of seq, unit laws with hatid, and the structural
/// associativity identity.
CheckReport check_composition_laws(const Interpretation& interp);

/// Bifunctor law (f1 => g1) . (f2 => g2) = (f2 . f1) => (g1 . g2) for
/// generators f1, g1 : B -> A and f2, g2 : A -> B.
CheckReport check_bifunctor(const Interpretation& interp);

/// Defining equations of d_A, T_AB and phi_{C,A,B}, and phi . phi_inv = id
/// both ways.
CheckReport check_canonical_existence(const Obj& a, const Obj& b, const Obj& c, const Interpretation& interp);

// --- causality ---------------------------------------------------------------

CheckReport check_causal(const Obj& obj, const Interpretation& interp);
CheckReport check_enough_states(const Obj& obj, const Interpretation& interp);
CheckReport check_enough_effects(const Obj& obj, const Interpretation& interp);

/// Every supplied state on X * Y factors as rho' (x) pi, pi the unique causal
/// state of Y.
CheckReport check_no_correlation_single_state(const Obj& y, const Obj& x, const std::vector<QMatrix>& states,
                                              const Interpretation& interp);

/// The process m : A -> A' * X induced by a state on (A => A') * X.
QMatrix induced_process(const Obj& a, const Obj& a2, const Obj& x, const QMatrix& state,
                        const Interpretation& interp);

/// discard_{A'} . m = discard_A (x) f'; the witness on pass is f'.
CheckReport check_non_signalling(const Obj& a, const Obj& a2, const Obj& x, const QMatrix& state,
                                 const Interpretation& interp);

/// The parallel-composition supermap restricted to causal states does not
/// reach the target channel (default: swap of A and B). Pass carries an
/// exact infeasibility certificate.
CheckReport check_tensor_vs_bipartite(const Obj& a, const Obj& b, const Interpretation& interp,
                                      const std::optional<QMatrix>& target = std::nullopt);

// --- double duals ------------------------------------------------------------

/// T_AB invertible, and T_AB equals its decomposition through phi and d_B.
CheckReport check_adjoint_dynamics(const Obj& a, const Obj& b, const Interpretation& interp);

/// d_B invertible, and d_B equals its decomposition through T_IB.
CheckReport check_double_dual(const Obj& b, const Interpretation& interp);

/// The three statements (all T_XY iso; all T_IY iso; all d_Y iso) over the
/// family agree, and every decomposition identity holds.
CheckReport check_double_dual_equivalence(const std::vector<Obj>& family, const Interpretation& interp);

/// (m => I) => I . d_{A=>B} = d_Z . m, d_{A=>B} invertible, and the
/// right-inverse law for d_B.
CheckReport check_double_dual_lifting(const Obj& a, const Obj& b, const Interpretation& interp);

/// (d_B => I) . d_{B => I} = id_{B => I}
CheckReport check_right_inverse(const Obj& b, const Interpretation& interp);

/// Effects pi(h) = discard . eps(h * rho) on A => A' for the pairwise
/// mixtures rho = (|i> + |j>)/2; dim(A)^2 covectors, built through the
/// pairing isomorphism.
std::vector<QMatrix> spanning_causal_effects(const Obj& a, const Obj& a2, const Interpretation& interp);

/// Pairing isomorphism both ways, and marginal independence of every
/// supplied state on (A => A') * X over the spanning effect set.
CheckReport check_no_signalling_states(const Obj& a, const Obj& a2, const Obj& x,
                                       const std::vector<QMatrix>& states, const Interpretation& interp);

/// Causal iff trivial, over the objects generated from the bases to small
/// depth.
CheckReport check_trivial_if_causal(const Interpretation& interp);

// --- random causal data ------------------------------------------------------

/// Convex combination of three products hat(c_k) (x) x_k with c_k a random
/// stochastic A -> A' and x_k a random causal state of X.
QMatrix random_product_mixture(const Obj& a, const Obj& a2, const Obj& x, std::uint64_t seed,
                               const Interpretation& interp);

/// A seeded point of the causal state space of obj (whole space in full mode).
QMatrix random_causal_state(const Obj& obj, std::uint64_t seed, const Interpretation& interp);

/// The state on (A => B) * (B => A) read off the swap channel:
/// f[(a,b1),(b2,a2)] = [b1 = b2][a2 = a].
QMatrix swap_state(std::size_t da, std::size_t db);

}  // namespace hopt
