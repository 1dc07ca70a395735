#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hopt {

using Rational = mpq_class;

/// The boolean semiring ({0,1}, or, and). A second model sharing the term
/// evaluator; support maps nonnegative rational semantics onto it.
struct Boolean {
  bool value = false;

  Boolean() = default;
  constexpr Boolean(bool v) : value(v) {}  // NOLINT(google-explicit-constructor)

  friend Boolean operator+(Boolean a, Boolean b) { return {a.value || b.value}; }
  friend Boolean operator*(Boolean a, Boolean b) { return {a.value && b.value}; }
  Boolean& operator+=(Boolean b) {
    value = value || b.value;
    return *this;
  }
  friend bool operator==(Boolean a, Boolean b) { return a.value == b.value; }
  friend bool operator!=(Boolean a, Boolean b) { return a.value != b.value; }
};

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static std::string str(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<Boolean> {
  static Boolean zero() { return {false}; }
  static Boolean one() { return {true}; }
  static bool is_zero(Boolean x) { return !x.value; }
  static std::string str(Boolean x) { return x.value ? "1" : "0"; }
};

/// Parses "n", "-n" or "n/d" (d > 0) into a canonical rational.
Rational parse_rational(const std::string& text);

}  // namespace hopt
