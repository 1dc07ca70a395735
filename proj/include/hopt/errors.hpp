#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hopt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undeclared or duplicate names, malformed declarations.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Ill-typed morphism terms (composition mismatch and friends).
class TypeError : public Error {
 public:
  using Error::Error;
};

/// Malformed circuit skeletons: cycles, dangling or reused ports.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A process plugged into a hole (or a generator matrix) has the wrong
/// shape, or violates stochasticity in causal mode.
class AssignmentError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure during evaluation, or an attempt to invert
/// a singular matrix.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A check whose preconditions do not hold in the given model.
class Inapplicable : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hopt
