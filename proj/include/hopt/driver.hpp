#pragma once

// Elaboration of parsed .hopt files and the directive runner behind the CLI.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopt/dsl.hpp"
#include "hopt/semantics.hpp"
#include "hopt/skeleton.hpp"

namespace hopt {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitType = 2, kExitParse = 3, kExitError = 4 };

struct RunConfig {
  Mode mode = Mode::Causal;
  std::uint64_t seed = 0;
  std::size_t max_dim = 3;
  bool json = false;
  std::optional<std::string> dot_out;
};

/// Everything a file declares, in semantic form.
struct Program {
  Signature sig;
  std::map<std::string, QMatrix> fixed;
  std::map<std::string, Obj> objects;
  std::map<std::string, Term> lets;
  std::vector<std::string> let_order;
  std::map<std::string, CircuitSkeleton> skeletons;
  std::vector<std::string> skeleton_order;
};

/// Builds the program. Throws SignatureError / TypeError / StructureError.
Program elaborate(const dsl::Ast& ast);

Obj to_obj(const dsl::ObjExpr& e, const Program& p);
Term to_term(const dsl::TermExpr& e, const Program& p);

/// Interpretation of the program's generators: explicit matrices where
/// given, seeded random entries otherwise.
Interpretation interpretation(const Program& p, const RunConfig& cfg);

/// Runs every directive in order, writing reports to `out` and diagnostics
/// to `err`. Returns an ExitCode.
int run(const RunConfig& cfg, const dsl::Ast& ast, std::ostream& out, std::ostream& err);

/// parse + run; parse errors give kExitParse.
int run_source(const RunConfig& cfg, const std::string& source, std::ostream& out, std::ostream& err);

/// Prints the matrix of let-bound term `name`.
int eval_source(const RunConfig& cfg, const std::string& source, const std::string& name, std::ostream& out,
                std::ostream& err);

/// Graphviz for every skeleton (or only `name`).
int export_dot_source(const std::string& source, const std::optional<std::string>& name, std::ostream& out,
                      std::ostream& err);

/// One line per theorem suite.
void list_theorems(bool json, std::ostream& out);

}  // namespace hopt
