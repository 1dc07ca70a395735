#include "hopt/types.hpp"

#include "hopt/errors.hpp"

namespace hopt {

struct Obj::Node {
  ObjKind kind;
  std::string name;
  Obj left;
  Obj right;
};

Obj::Obj() : node_(nullptr) {}

Obj::Obj(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Obj Obj::unit() { return Obj(); }

Obj Obj::base(std::string name) {
  return Obj(std::make_shared<const Node>(Node{ObjKind::Base, std::move(name), {}, {}}));
}

Obj Obj::tensor(Obj left, Obj right) {
  return Obj(std::make_shared<const Node>(
      Node{ObjKind::Tensor, {}, std::move(left), std::move(right)}));
}

Obj Obj::arrow(Obj source, Obj target) {
  return Obj(std::make_shared<const Node>(
      Node{ObjKind::Arrow, {}, std::move(source), std::move(target)}));
}

ObjKind Obj::kind() const { return node_ ? node_->kind : ObjKind::Unit; }

const std::string& Obj::name() const {
  static const std::string empty;
  return node_ ? node_->name : empty;
}

const Obj& Obj::left() const {
  if (!node_ || (node_->kind != ObjKind::Tensor && node_->kind != ObjKind::Arrow))
    throw Error("Obj::left on a leaf object");
  return node_->left;
}

const Obj& Obj::right() const {
  if (!node_ || (node_->kind != ObjKind::Tensor && node_->kind != ObjKind::Arrow))
    throw Error("Obj::right on a leaf object");
  return node_->right;
}

namespace {

// precedence: 0 = arrow level, 1 = tensor level, 2 = atom
void print(const Obj& o, int ctx, std::string& out) {
  switch (o.kind()) {
    case ObjKind::Unit:
      out += "I";
      return;
    case ObjKind::Base:
      out += o.name();
      return;
    case ObjKind::Tensor: {
      const bool paren = ctx > 1;
      if (paren) out += "(";
      print(o.left(), 1, out);
      out += " * ";
      print(o.right(), 2, out);
      if (paren) out += ")";
      return;
    }
    case ObjKind::Arrow: {
      const bool paren = ctx > 0;
      if (paren) out += "(";
      print(o.left(), 1, out);
      out += " => ";
      print(o.right(), 0, out);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

std::string Obj::str() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

bool operator==(const Obj& a, const Obj& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ObjKind::Unit:
      return true;
    case ObjKind::Base:
      return a.name() == b.name();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

Obj dual(const Obj& obj) { return Obj::arrow(obj, Obj::unit()); }

Obj double_dual(const Obj& obj) { return dual(dual(obj)); }

Signature& Signature::add_base(std::string name, std::size_t dim, bool causal) {
  if (name.empty()) throw SignatureError("empty base object name");
  if (dim < 1) throw SignatureError("base object '" + name + "' must have dimension >= 1");
  if (base_index_.count(name) || gen_index_.count(name))
    throw SignatureError("duplicate name '" + name + "' in signature");
  base_index_[name] = bases_.size();
  bases_.push_back({std::move(name), dim, causal});
  return *this;
}

Signature& Signature::add_generator(std::string name, Obj dom, Obj cod) {
  if (name.empty()) throw SignatureError("empty generator name");
  if (base_index_.count(name) || gen_index_.count(name))
    throw SignatureError("duplicate name '" + name + "' in signature");
  validate(dom);
  validate(cod);
  gen_index_[name] = generators_.size();
  generators_.push_back({std::move(name), std::move(dom), std::move(cod)});
  return *this;
}

const BaseObject* Signature::find_base(const std::string& name) const {
  auto it = base_index_.find(name);
  return it == base_index_.end() ? nullptr : &bases_[it->second];
}

const Generator* Signature::find_generator(const std::string& name) const {
  auto it = gen_index_.find(name);
  return it == gen_index_.end() ? nullptr : &generators_[it->second];
}

void Signature::validate(const Obj& obj) const {
  switch (obj.kind()) {
    case ObjKind::Unit:
      return;
    case ObjKind::Base:
      if (!find_base(obj.name()))
        throw SignatureError("undeclared base object '" + obj.name() + "'");
      return;
    default:
      validate(obj.left());
      validate(obj.right());
  }
}

bool is_first_order(const Obj& obj, const Signature& sig) {
  sig.validate(obj);
  switch (obj.kind()) {
    case ObjKind::Unit:
    case ObjKind::Base:
      return true;
    case ObjKind::Tensor:
      return is_first_order(obj.left(), sig) && is_first_order(obj.right(), sig);
    case ObjKind::Arrow:
      return false;
  }
  return false;
}

bool is_causal_first_order(const Obj& obj, const Signature& sig) {
  sig.validate(obj);
  switch (obj.kind()) {
    case ObjKind::Unit:
      return true;
    case ObjKind::Base:
      return sig.find_base(obj.name())->causal;
    case ObjKind::Tensor:
      return is_causal_first_order(obj.left(), sig) && is_causal_first_order(obj.right(), sig);
    case ObjKind::Arrow:
      return false;
  }
  return false;
}

std::size_t dimension(const Obj& obj, const Signature& sig) {
  switch (obj.kind()) {
    case ObjKind::Unit:
      return 1;
    case ObjKind::Base: {
      const BaseObject* b = sig.find_base(obj.name());
      if (!b) throw SignatureError("undeclared base object '" + obj.name() + "'");
      return b->dim;
    }
    default:
      return dimension(obj.left(), sig) * dimension(obj.right(), sig);
  }
}

}  // namespace hopt
