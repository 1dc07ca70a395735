#pragma once

// Morphism terms: base generators plus the canonical processes of a higher
// order process theory, and the typechecker that assigns dom/cod.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hopt/types.hpp"

namespace hopt {

enum class TermKind : std::uint8_t {
  Gen,           // name
  Id,            // A
  Compose,       // g . f
  Tensor,        // f * g
  Swap,          // A, B : A*B -> B*A
  LUnit,         // A : I*A -> A
  LUnitInv,      // A : A -> I*A
  RUnit,         // A : A*I -> A
  RUnitInv,      // A : A -> A*I
  Assoc,         // A,B,C : (A*B)*C -> A*(B*C)
  AssocInv,      // A,B,C : A*(B*C) -> (A*B)*C
  Eps,           // A,B : (A=>B)*A -> B
  Eta,           // A : A -> (I=>A)
  SeqComp,       // A,B,C : (B=>C)*(A=>B) -> (A=>C)
  ParComp,       // A,A',B,B' : (A=>A')*(B=>B') -> (A*B)=>(A'*B')
  DeltaPartial,  // C,A,B : ((C*A)=>B)*C -> (A=>B)
  HatId,         // A : I -> (A=>A)
  Discard,       // A : A -> I, A causal first-order
  Static,        // f : A -> B gives I -> (A=>B)
  Inverse,       // f : A -> B gives B -> A; singular f fails at evaluation
};

/// Immutable morphism term. Subterms are shared, so derived constructions
/// that reuse a term do not copy it.
class Term {
 public:
  static Term gen(std::string name);
  static Term id(Obj a);
  static Term compose(Term g, Term f);
  static Term tensor(Term f, Term g);
  static Term swap(Obj a, Obj b);
  static Term lunit(Obj a);
  static Term lunit_inv(Obj a);
  static Term runit(Obj a);
  static Term runit_inv(Obj a);
  static Term assoc(Obj a, Obj b, Obj c);
  static Term assoc_inv(Obj a, Obj b, Obj c);
  static Term eps(Obj a, Obj b);
  static Term eta(Obj a);
  static Term seq(Obj a, Obj b, Obj c);
  static Term par(Obj a, Obj a2, Obj b, Obj b2);
  static Term delta(Obj c, Obj a, Obj b);
  static Term hat_id(Obj a);
  static Term discard(Obj a);
  static Term static_of(Term f);
  static Term inverse(Term f);

  TermKind kind() const;
  const std::string& name() const;
  const std::vector<Obj>& objs() const;
  const std::vector<Term>& args() const;

  /// Stable identity of the shared node; used as a memo key.
  const void* id_ptr() const { return node_.get(); }

  /// Concrete syntax, re-parseable by the DSL front end.
  std::string str() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Keyword used by the concrete syntax for each primitive constructor.
const char* keyword(TermKind kind);

struct TypedTerm {
  Term term;
  Obj dom;
  Obj cod;
};

/// Assigns dom/cod to every node. Throws TypeError naming the offending
/// subterm, or SignatureError for undeclared names.
TypedTerm typecheck(const Term& term, const Signature& sig);

/// Number of nodes of the given kind, counting shared subterms once per use.
std::size_t count_kind(const Term& term, TermKind kind);

}  // namespace hopt
