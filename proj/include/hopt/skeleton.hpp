#pragma once

// Circuit skeletons: DAGs whose nodes are open holes A => B between
// first-order objects, connected by typed wires.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopt/semantics.hpp"

namespace hopt {

/// A wire end. `port` is empty for a global input/output, otherwise the
/// index into the node's input (target) or output (source) ports.
struct Endpoint {
  std::string name;
  std::optional<std::size_t> port;

  std::string str() const;
  bool operator==(const Endpoint&) const = default;
  auto operator<=>(const Endpoint&) const = default;
};

struct SkeletonNode {
  std::string id;
  std::vector<Obj> inputs;
  std::vector<Obj> outputs;

  /// tensor_list(inputs) => tensor_list(outputs)
  Obj hole_type() const;
};

struct SkeletonWire {
  Endpoint source;
  Endpoint target;
  std::optional<Obj> type;

  std::string str() const;
};

struct CircuitSkeleton {
  std::string name;
  std::vector<std::pair<std::string, Obj>> inputs;
  std::vector<std::pair<std::string, Obj>> outputs;
  std::vector<SkeletonNode> nodes;
  std::vector<SkeletonWire> wires;
};

/// Hole ids in compilation order: topological, ties broken by id.
/// Throws StructureError on invalid skeletons (cycles, dangling or doubly
/// used ports, type mismatches, higher-order ports).
std::vector<std::string> validate_skeleton(const CircuitSkeleton& sk, const Signature& sig);

/// holes (compilation order) * global inputs -> global outputs, built from
/// one eps per hole plus structural wiring.
TypedTerm skeleton_to_term(const CircuitSkeleton& sk, const Signature& sig);

/// True if the holes form a single chain, each feeding the next.
bool is_comb(const CircuitSkeleton& sk, const Signature& sig);

/// The channel global inputs -> global outputs with process matrices plugged
/// into the holes. Throws AssignmentError for missing, misshapen or (causal
/// mode) non-stochastic fills.
QMatrix fill_holes(const CircuitSkeleton& sk, const std::map<std::string, QMatrix>& fills,
                   const Interpretation& interp);

/// Same with processes given as terms.
QMatrix fill_holes(const CircuitSkeleton& sk, const std::map<std::string, Term>& fills,
                   const Interpretation& interp);

/// Entry (i, j) is true iff input block i can signal to output block j.
/// Causal mode and a stochastic channel are required (Inapplicable
/// otherwise); StructureError on a dimension mismatch.
BMatrix signalling_analysis(const QMatrix& channel, const std::vector<Obj>& input_blocks,
                            const std::vector<Obj>& output_blocks, const Interpretation& interp);

/// Graphviz: holes as boxes, global ports as plain nodes, wires as labelled edges.
std::string skeleton_to_dot(const CircuitSkeleton& sk, const Signature& sig);

}  // namespace hopt
