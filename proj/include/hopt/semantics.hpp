#pragma once

// Exact matrix semantics of morphism terms. Index convention: the basis of
// A * B and of A => B is the pair (a, b) at a * dim(B) + b; Kronecker is row
// major; a morphism X -> Y is a dim(Y) x dim(X) matrix.

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "hopt/linalg.hpp"
#include "hopt/matrix.hpp"
#include "hopt/term.hpp"

namespace hopt {

using QMatrix = Matrix<Rational>;
using BMatrix = Matrix<Boolean>;

/// causal: designated discards exist and first-order generators between
/// causal objects must be stochastic. full: the unrestricted rational model.
enum class Mode { Full, Causal };

const char* mode_name(Mode mode);
Mode parse_mode(const std::string& text);

class Interpretation {
 public:
  explicit Interpretation(Signature sig, Mode mode = Mode::Full);

  const Signature& sig() const { return sig_; }
  Mode mode() const { return mode_; }

  /// Throws AssignmentError on an unknown name, a shape mismatch, or (causal
  /// mode) a non-stochastic matrix between causal first-order objects.
  void set_generator(const std::string& name, QMatrix m);
  bool has_generator(const std::string& name) const;
  const QMatrix& generator(const std::string& name) const;

  std::size_t dim(const Obj& obj) const { return dimension(obj, sig_); }

  /// The all-ones covector on a causal first-order object.
  QMatrix discard(const Obj& obj) const;

 private:
  Signature sig_;
  Mode mode_;
  std::map<std::string, QMatrix> gens_;
};

/// Generators g : dom -> cod that random_interpretation normalizes and that
/// set_generator checks in causal mode.
bool must_be_stochastic(const Generator& g, const Interpretation& interp);

namespace canonical {

// Closed-form matrices of the primitive canonical processes, written once
// against the index convention. Arguments are dimensions.
template <typename T>
Matrix<T> swap(std::size_t a, std::size_t b);
template <typename T>
Matrix<T> eps(std::size_t a, std::size_t b);
template <typename T>
Matrix<T> seq(std::size_t a, std::size_t b, std::size_t c);
template <typename T>
Matrix<T> par(std::size_t a, std::size_t a2, std::size_t b, std::size_t b2);
template <typename T>
Matrix<T> delta(std::size_t c, std::size_t a, std::size_t b);
template <typename T>
Matrix<T> hat_id(std::size_t a);

}  // namespace canonical

/// State vector of a process matrix f (dim B x dim A): f[b,a] at a*dim(B)+b.
template <typename T>
Matrix<T> static_vector(const Matrix<T>& f);

/// Inverse of static_vector for the given dimensions.
QMatrix process_of_static(const QMatrix& v, std::size_t dom_dim, std::size_t cod_dim);

/// Typechecks and evaluates. Throws TypeError / SignatureError from the
/// typechecker, AssignmentError for a generator without a matrix, EvalError
/// for a singular inverse.
QMatrix eval(const Term& term, const Interpretation& interp);

/// Boolean-semiring evaluation; generators are replaced by their supports.
BMatrix eval_boolean(const Term& term, const Interpretation& interp);

/// Exact equality of the two evaluations. Throws TypeError if dom or cod
/// differ.
bool check_eq(const Term& t1, const Term& t2, const Interpretation& interp);

/// Deterministic in (sig, seed, max_entry, mode). Entries are n/d with
/// 1 <= d <= max_entry and |n| <= max_entry (n >= 0 in causal mode); causal
/// mode then rescales each column of a must_be_stochastic generator to sum 1.
/// Generators already carrying a matrix in `fixed` keep it.
Interpretation random_interpretation(const Signature& sig, std::uint64_t seed,
                                     std::uint32_t max_entry = 9, Mode mode = Mode::Full,
                                     const std::map<std::string, QMatrix>* fixed = nullptr);

/// A random matrix drawn like a generator entry; stochastic if requested.
QMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed,
                      std::uint32_t max_entry, bool nonnegative, bool stochastic);

nlohmann::json matrix_to_json(const QMatrix& m);
QMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace hopt
