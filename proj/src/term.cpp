#include "hopt/term.hpp"

#include <unordered_map>
#include <utility>

#include "hopt/errors.hpp"

namespace hopt {

struct Term::Node {
  TermKind kind;
  std::string name;
  std::vector<Obj> objs;
  std::vector<Term> args;
};

Term::Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

namespace {

template <typename... O>
std::vector<Obj> objs_of(O... o) {
  return {std::move(o)...};
}

}  // namespace

#define HOPT_MAKE(kind_, name_, objs_, args_) \
  Term(std::make_shared<const Node>(Node{TermKind::kind_, name_, objs_, args_}))

Term Term::gen(std::string name) { return HOPT_MAKE(Gen, std::move(name), {}, {}); }
Term Term::id(Obj a) { return HOPT_MAKE(Id, {}, objs_of(std::move(a)), {}); }
Term Term::compose(Term g, Term f) {
  return HOPT_MAKE(Compose, {}, {}, (std::vector<Term>{std::move(g), std::move(f)}));
}
Term Term::tensor(Term f, Term g) {
  return HOPT_MAKE(Tensor, {}, {}, (std::vector<Term>{std::move(f), std::move(g)}));
}
Term Term::swap(Obj a, Obj b) { return HOPT_MAKE(Swap, {}, objs_of(std::move(a), std::move(b)), {}); }
Term Term::lunit(Obj a) { return HOPT_MAKE(LUnit, {}, objs_of(std::move(a)), {}); }
Term Term::lunit_inv(Obj a) { return HOPT_MAKE(LUnitInv, {}, objs_of(std::move(a)), {}); }
Term Term::runit(Obj a) { return HOPT_MAKE(RUnit, {}, objs_of(std::move(a)), {}); }
Term Term::runit_inv(Obj a) { return HOPT_MAKE(RUnitInv, {}, objs_of(std::move(a)), {}); }
Term Term::assoc(Obj a, Obj b, Obj c) {
  return HOPT_MAKE(Assoc, {}, objs_of(std::move(a), std::move(b), std::move(c)), {});
}
Term Term::assoc_inv(Obj a, Obj b, Obj c) {
  return HOPT_MAKE(AssocInv, {}, objs_of(std::move(a), std::move(b), std::move(c)), {});
}
Term Term::eps(Obj a, Obj b) { return HOPT_MAKE(Eps, {}, objs_of(std::move(a), std::move(b)), {}); }
Term Term::eta(Obj a) { return HOPT_MAKE(Eta, {}, objs_of(std::move(a)), {}); }
Term Term::seq(Obj a, Obj b, Obj c) {
  return HOPT_MAKE(SeqComp, {}, objs_of(std::move(a), std::move(b), std::move(c)), {});
}
Term Term::par(Obj a, Obj a2, Obj b, Obj b2) {
  return HOPT_MAKE(ParComp, {}, objs_of(std::move(a), std::move(a2), std::move(b), std::move(b2)), {});
}
Term Term::delta(Obj c, Obj a, Obj b) {
  return HOPT_MAKE(DeltaPartial, {}, objs_of(std::move(c), std::move(a), std::move(b)), {});
}
Term Term::hat_id(Obj a) { return HOPT_MAKE(HatId, {}, objs_of(std::move(a)), {}); }
Term Term::discard(Obj a) { return HOPT_MAKE(Discard, {}, objs_of(std::move(a)), {}); }
Term Term::static_of(Term f) { return HOPT_MAKE(Static, {}, {}, (std::vector<Term>{std::move(f)})); }
Term Term::inverse(Term f) { return HOPT_MAKE(Inverse, {}, {}, (std::vector<Term>{std::move(f)})); }

#undef HOPT_MAKE

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const std::vector<Obj>& Term::objs() const { return node_->objs; }
const std::vector<Term>& Term::args() const { return node_->args; }

const char* keyword(TermKind kind) {
  switch (kind) {
    case TermKind::Gen: return "";
    case TermKind::Id: return "id";
    case TermKind::Compose: return ".";
    case TermKind::Tensor: return "*";
    case TermKind::Swap: return "swap";
    case TermKind::LUnit: return "lunit";
    case TermKind::LUnitInv: return "lunit_inv";
    case TermKind::RUnit: return "runit";
    case TermKind::RUnitInv: return "runit_inv";
    case TermKind::Assoc: return "assoc";
    case TermKind::AssocInv: return "assoc_inv";
    case TermKind::Eps: return "eps";
    case TermKind::Eta: return "eta";
    case TermKind::SeqComp: return "seq";
    case TermKind::ParComp: return "par";
    case TermKind::DeltaPartial: return "delta";
    case TermKind::HatId: return "hatid";
    case TermKind::Discard: return "discard";
    case TermKind::Static: return "static";
    case TermKind::Inverse: return "inv";
  }
  return "?";
}

namespace {

// 0 = composition level, 1 = tensor level, 2 = atom
void print(const Term& t, int ctx, std::string& out) {
  switch (t.kind()) {
    case TermKind::Gen:
      out += t.name();
      return;
    case TermKind::Compose: {
      const bool paren = ctx > 0;
      if (paren) out += "(";
      print(t.args()[0], 0, out);
      out += " . ";
      print(t.args()[1], 1, out);
      if (paren) out += ")";
      return;
    }
    case TermKind::Tensor: {
      const bool paren = ctx > 1;
      if (paren) out += "(";
      print(t.args()[0], 1, out);
      out += " * ";
      print(t.args()[1], 2, out);
      if (paren) out += ")";
      return;
    }
    case TermKind::Static:
    case TermKind::Inverse:
      out += keyword(t.kind());
      out += "(";
      print(t.args()[0], 0, out);
      out += ")";
      return;
    default: {
      out += keyword(t.kind());
      out += "(";
      bool first = true;
      for (const auto& o : t.objs()) {
        if (!first) out += ", ";
        first = false;
        out += o.str();
      }
      out += ")";
      return;
    }
  }
}

}  // namespace

std::string Term::str() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.name() != b.name()) return false;
  if (a.objs() != b.objs()) return false;
  if (a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (a.args()[i] != b.args()[i]) return false;
  return true;
}

namespace {

class Checker {
 public:
  explicit Checker(const Signature& sig) : sig_(sig) {}

  std::pair<Obj, Obj> run(const Term& t) {
    if (auto it = memo_.find(t.id_ptr()); it != memo_.end()) return it->second;
    for (const auto& o : t.objs()) sig_.validate(o);
    auto result = type_of(t);
    memo_.emplace(t.id_ptr(), result);
    return result;
  }

 private:
  [[noreturn]] static void fail(const Term& t, const std::string& why) {
    throw TypeError("ill-typed term '" + t.str() + "': " + why);
  }

  std::pair<Obj, Obj> type_of(const Term& t) {
    const auto& o = t.objs();
    const Obj I = Obj::unit();
    switch (t.kind()) {
      case TermKind::Gen: {
        const Generator* g = sig_.find_generator(t.name());
        if (!g) throw SignatureError("undeclared generator '" + t.name() + "'");
        return {g->dom, g->cod};
      }
      case TermKind::Id:
        return {o[0], o[0]};
      case TermKind::Compose: {
        auto [gd, gc] = run(t.args()[0]);
        auto [fd, fc] = run(t.args()[1]);
        if (fc != gd)
          fail(t, "codomain " + fc.str() + " of '" + t.args()[1].str() + "' does not match domain " +
                      gd.str() + " of '" + t.args()[0].str() + "'");
        return {fd, gc};
      }
      case TermKind::Tensor: {
        auto [fd, fc] = run(t.args()[0]);
        auto [gd, gc] = run(t.args()[1]);
        return {fd * gd, fc * gc};
      }
      case TermKind::Swap:
        return {o[0] * o[1], o[1] * o[0]};
      case TermKind::LUnit:
        return {I * o[0], o[0]};
      case TermKind::LUnitInv:
        return {o[0], I * o[0]};
      case TermKind::RUnit:
        return {o[0] * I, o[0]};
      case TermKind::RUnitInv:
        return {o[0], o[0] * I};
      case TermKind::Assoc:
        return {(o[0] * o[1]) * o[2], o[0] * (o[1] * o[2])};
      case TermKind::AssocInv:
        return {o[0] * (o[1] * o[2]), (o[0] * o[1]) * o[2]};
      case TermKind::Eps:
        return {arrow(o[0], o[1]) * o[0], o[1]};
      case TermKind::Eta:
        return {o[0], arrow(I, o[0])};
      case TermKind::SeqComp:
        return {arrow(o[1], o[2]) * arrow(o[0], o[1]), arrow(o[0], o[2])};
      case TermKind::ParComp:
        return {arrow(o[0], o[1]) * arrow(o[2], o[3]), arrow(o[0] * o[2], o[1] * o[3])};
      case TermKind::DeltaPartial:
        return {arrow(o[0] * o[1], o[2]) * o[0], arrow(o[1], o[2])};
      case TermKind::HatId:
        return {I, arrow(o[0], o[0])};
      case TermKind::Discard:
        if (!is_causal_first_order(o[0], sig_))
          fail(t, "discard requires a first-order object built from causal bases, got " + o[0].str());
        return {o[0], I};
      case TermKind::Static: {
        auto [fd, fc] = run(t.args()[0]);
        return {I, arrow(fd, fc)};
      }
      case TermKind::Inverse: {
        auto [fd, fc] = run(t.args()[0]);
        if (dimension(fd, sig_) != dimension(fc, sig_))
          fail(t, "cannot invert a morphism between objects of different dimension");
        return {fc, fd};
      }
    }
    fail(t, "unknown constructor");
  }

  const Signature& sig_;
  std::unordered_map<const void*, std::pair<Obj, Obj>> memo_;
};

}  // namespace

TypedTerm typecheck(const Term& term, const Signature& sig) {
  Checker checker(sig);
  auto [dom, cod] = checker.run(term);
  return {term, std::move(dom), std::move(cod)};
}

std::size_t count_kind(const Term& term, TermKind kind) {
  std::unordered_map<const void*, std::size_t> memo;
  auto go = [&](auto&& self, const Term& t) -> std::size_t {
    if (auto it = memo.find(t.id_ptr()); it != memo.end()) return it->second;
    std::size_t n = t.kind() == kind ? 1 : 0;
    for (const auto& a : t.args()) n += self(self, a);
    memo.emplace(t.id_ptr(), n);
    return n;
  };
  return go(go, term);
}

}  // namespace hopt
