#pragma once

// Object language: the free algebra generated from declared base objects by
// the monoidal product and the internal hom.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hopt {

enum class ObjKind : std::uint8_t { Unit, Base, Tensor, Arrow };

/// Immutable object expression. Equality is syntactic: `I * A` and `A` are
/// different objects, connected only by an explicit unitor.
class Obj {
 public:
  Obj();  // the monoidal unit

  static Obj unit();
  static Obj base(std::string name);
  static Obj tensor(Obj left, Obj right);
  static Obj arrow(Obj source, Obj target);

  ObjKind kind() const;
  bool is_unit() const { return kind() == ObjKind::Unit; }
  bool is_base() const { return kind() == ObjKind::Base; }
  bool is_tensor() const { return kind() == ObjKind::Tensor; }
  bool is_arrow() const { return kind() == ObjKind::Arrow; }

  /// Base name; empty for other kinds.
  const std::string& name() const;
  /// Left factor / source. Only valid for Tensor and Arrow.
  const Obj& left() const;
  /// Right factor / target. Only valid for Tensor and Arrow.
  const Obj& right() const;

  /// Concrete syntax: `I`, `A`, `A * B`, `A => B`. `*` binds tighter than
  /// `=>`; `*` associates to the left and `=>` to the right.
  std::string str() const;

  friend bool operator==(const Obj& a, const Obj& b);
  friend bool operator!=(const Obj& a, const Obj& b) { return !(a == b); }

 private:
  struct Node;
  explicit Obj(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

inline Obj operator*(Obj a, Obj b) { return Obj::tensor(std::move(a), std::move(b)); }
inline Obj arrow(Obj a, Obj b) { return Obj::arrow(std::move(a), std::move(b)); }

/// A => I
Obj dual(const Obj& obj);
/// (A => I) => I
Obj double_dual(const Obj& obj);

struct BaseObject {
  std::string name;
  std::size_t dim = 1;
  bool causal = false;
};

struct Generator {
  std::string name;
  Obj dom;
  Obj cod;
};

/// The first-order data every higher-order object is generated from:
/// base objects with dimensions, and typed generators.
class Signature {
 public:
  Signature() = default;

  Signature& add_base(std::string name, std::size_t dim, bool causal = false);
  Signature& add_generator(std::string name, Obj dom, Obj cod);

  const BaseObject* find_base(const std::string& name) const;
  const Generator* find_generator(const std::string& name) const;

  const std::vector<BaseObject>& bases() const { return bases_; }
  const std::vector<Generator>& generators() const { return generators_; }

  /// Throws SignatureError if `obj` mentions an undeclared base.
  void validate(const Obj& obj) const;

 private:
  std::vector<BaseObject> bases_;
  std::vector<Generator> generators_;
  std::map<std::string, std::size_t> base_index_;
  std::map<std::string, std::size_t> gen_index_;
};

/// No Arrow node occurs in `obj`. Validates against `sig`.
bool is_first_order(const Obj& obj, const Signature& sig);

/// First-order and every base occurring in it is flagged causal.
bool is_causal_first_order(const Obj& obj, const Signature& sig);

/// Model dimension: Unit 1, Base declared, Tensor and Arrow multiply.
std::size_t dimension(const Obj& obj, const Signature& sig);

}  // namespace hopt
