#pragma once

// The .hopt source language: syntax tree, parser and printer. The grammar
// is documented in docs/grammar.md.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hopt/scalar.hpp"

namespace hopt::dsl {

/// Source position. Compares equal to every other position so that trees
/// compare structurally.
struct Pos {
  std::size_t line = 0;
  std::size_t col = 0;
  bool operator==(const Pos&) const { return true; }
};

struct ObjExpr {
  enum class Kind { Unit, Name, Tensor, Arrow };
  Kind kind = Kind::Unit;
  std::string name;
  std::vector<ObjExpr> args;
  Pos pos;
  bool operator==(const ObjExpr&) const = default;
};

using MatrixLit = std::vector<std::vector<Rational>>;

struct TermExpr {
  /// Ref: generator or let name. Ctor: constructor applied to objs / terms /
  /// a skeleton name (in `name` after the colon).
  enum class Kind { Ref, Ctor, Compose, Tensor };
  Kind kind = Kind::Ref;
  std::string name;
  std::vector<ObjExpr> objs;
  std::vector<TermExpr> terms;
  std::string skeleton;
  Pos pos;
  bool operator==(const TermExpr&) const = default;
};

struct BaseDecl {
  std::string name;
  std::uint64_t dim = 1;
  bool causal = false;
  Pos pos;
  bool operator==(const BaseDecl&) const = default;
};

struct GenDecl {
  std::string name;
  ObjExpr dom;
  ObjExpr cod;
  std::optional<MatrixLit> matrix;
  Pos pos;
  bool operator==(const GenDecl&) const = default;
};

struct SignatureBlock {
  std::vector<BaseDecl> bases;
  std::vector<GenDecl> gens;
  Pos pos;
  bool operator==(const SignatureBlock&) const = default;
};

struct ObjectAlias {
  std::string name;
  ObjExpr value;
  Pos pos;
  bool operator==(const ObjectAlias&) const = default;
};

struct LetDecl {
  std::string name;
  TermExpr value;
  Pos pos;
  bool operator==(const LetDecl&) const = default;
};

struct PortDecl {
  std::string name;
  ObjExpr type;
  Pos pos;
  bool operator==(const PortDecl&) const = default;
};

struct NodeDecl {
  std::string id;
  std::vector<ObjExpr> inputs;
  std::vector<ObjExpr> outputs;
  Pos pos;
  bool operator==(const NodeDecl&) const = default;
};

struct EndpointExpr {
  std::string name;
  std::optional<std::uint64_t> port;
  Pos pos;
  bool operator==(const EndpointExpr&) const = default;
};

struct WireDecl {
  EndpointExpr source;
  EndpointExpr target;
  std::optional<ObjExpr> type;
  Pos pos;
  bool operator==(const WireDecl&) const = default;
};

struct SkeletonDecl {
  std::string name;
  std::vector<PortDecl> inputs;
  std::vector<PortDecl> outputs;
  std::vector<NodeDecl> nodes;
  std::vector<WireDecl> wires;
  Pos pos;
  bool operator==(const SkeletonDecl&) const = default;
};

struct CheckEq {
  TermExpr lhs;
  TermExpr rhs;
  std::vector<std::uint64_t> seeds;
  Pos pos;
  bool operator==(const CheckEq&) const = default;
};

struct CheckTheorem {
  std::string name;
  std::vector<std::uint64_t> dims;
  std::vector<std::uint64_t> seeds;
  std::optional<std::uint64_t> count;
  Pos pos;
  bool operator==(const CheckTheorem&) const = default;
};

using Item = std::variant<SignatureBlock, ObjectAlias, LetDecl, SkeletonDecl, CheckEq, CheckTheorem>;

struct Ast {
  std::vector<Item> items;
  bool operator==(const Ast&) const = default;
};

/// Parses and resolves names (every reference must be declared earlier;
/// reserved words cannot be declared). Throws ParseError with position.
Ast parse(const std::string& source);

/// Canonical source text; parse(print(ast)) == ast.
std::string print(const Ast& ast);
std::string print(const ObjExpr& obj);
std::string print(const TermExpr& term);

/// Constructor names and keywords.
const std::vector<std::string>& reserved_words();

}  // namespace hopt::dsl
