#include "hopt/driver.hpp"

#include <functional>
#include <ostream>

#include "hopt/constructions.hpp"
#include "hopt/errors.hpp"
#include "hopt/suites.hpp"

namespace hopt {

using namespace dsl;

Obj to_obj(const ObjExpr& e, const Program& p) {
  switch (e.kind) {
    case ObjExpr::Kind::Unit:
      return Obj::unit();
    case ObjExpr::Kind::Name: {
      auto it = p.objects.find(e.name);
      if (it != p.objects.end()) return it->second;
      return Obj::base(e.name);
    }
    case ObjExpr::Kind::Tensor:
      return to_obj(e.args[0], p) * to_obj(e.args[1], p);
    case ObjExpr::Kind::Arrow:
      return arrow(to_obj(e.args[0], p), to_obj(e.args[1], p));
  }
  return Obj::unit();
}

Term to_term(const TermExpr& e, const Program& p) {
  switch (e.kind) {
    case TermExpr::Kind::Ref: {
      auto it = p.lets.find(e.name);
      return it != p.lets.end() ? it->second : Term::gen(e.name);
    }
    case TermExpr::Kind::Compose:
      return Term::compose(to_term(e.terms[0], p), to_term(e.terms[1], p));
    case TermExpr::Kind::Tensor:
      return Term::tensor(to_term(e.terms[0], p), to_term(e.terms[1], p));
    case TermExpr::Kind::Ctor:
      break;
  }
  std::vector<Obj> o;
  for (const auto& x : e.objs) o.push_back(to_obj(x, p));
  std::vector<Term> t;
  for (const auto& x : e.terms) t.push_back(to_term(x, p));
  auto typed = [&](std::size_t i) { return typecheck(t[i], p.sig); };
  const std::string& n = e.name;
  if (n == "id") return Term::id(o[0]);
  if (n == "eps") return Term::eps(o[0], o[1]);
  if (n == "eta") return Term::eta(o[0]);
  if (n == "seq") return Term::seq(o[0], o[1], o[2]);
  if (n == "par") return Term::par(o[0], o[1], o[2], o[3]);
  if (n == "delta") return Term::delta(o[0], o[1], o[2]);
  if (n == "hatid") return Term::hat_id(o[0]);
  if (n == "discard") return Term::discard(o[0]);
  if (n == "swap") return Term::swap(o[0], o[1]);
  if (n == "lunit") return Term::lunit(o[0]);
  if (n == "lunit_inv") return Term::lunit_inv(o[0]);
  if (n == "runit") return Term::runit(o[0]);
  if (n == "runit_inv") return Term::runit_inv(o[0]);
  if (n == "assoc") return Term::assoc(o[0], o[1], o[2]);
  if (n == "assoc_inv") return Term::assoc_inv(o[0], o[1], o[2]);
  if (n == "curry") return curry(typed(0));
  if (n == "hat") return hat(typed(0));
  if (n == "static") return Term::static_of(t[0]);
  if (n == "inv") return Term::inverse(t[0]);
  if (n == "name") return name(typed(0));
  if (n == "dualiser") return dualiser(o[0]);
  if (n == "lift") return lift(o[0], o[1]);
  if (n == "phi") return phi(o[0], o[1], o[2]);
  if (n == "phi_inv") return phi_inv(o[0], o[1], o[2]);
  if (n == "arrow") return arrow_functor(typed(0), typed(1));
  if (n == "compile") return skeleton_to_term(p.skeletons.at(e.skeleton), p.sig).term;
  throw TypeError("unknown constructor '" + n + "'");
}

namespace {

QMatrix matrix_of(const MatrixLit& m) {
  QMatrix out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j];
  return out;
}

CircuitSkeleton skeleton_of(const SkeletonDecl& d, const Program& p) {
  CircuitSkeleton sk;
  sk.name = d.name;
  for (const auto& x : d.inputs) sk.inputs.emplace_back(x.name, to_obj(x.type, p));
  for (const auto& x : d.outputs) sk.outputs.emplace_back(x.name, to_obj(x.type, p));
  for (const auto& n : d.nodes) {
    SkeletonNode node{n.id, {}, {}};
    for (const auto& o : n.inputs) node.inputs.push_back(to_obj(o, p));
    for (const auto& o : n.outputs) node.outputs.push_back(to_obj(o, p));
    sk.nodes.push_back(std::move(node));
  }
  for (const auto& w : d.wires) {
    SkeletonWire wire{{w.source.name, w.source.port}, {w.target.name, w.target.port}, std::nullopt};
    if (w.type) wire.type = to_obj(*w.type, p);
    sk.wires.push_back(std::move(wire));
  }
  validate_skeleton(sk, p.sig);
  return sk;
}

}  // namespace

Program elaborate(const Ast& ast) {
  Program p;
  for (const auto& item : ast.items) {
    if (const auto* s = std::get_if<SignatureBlock>(&item)) {
      for (const auto& b : s->bases) p.sig.add_base(b.name, b.dim, b.causal);
      for (const auto& g : s->gens) {
        p.sig.add_generator(g.name, to_obj(g.dom, p), to_obj(g.cod, p));
        if (g.matrix) p.fixed[g.name] = matrix_of(*g.matrix);
      }
    } else if (const auto* a = std::get_if<ObjectAlias>(&item)) {
      p.objects[a->name] = to_obj(a->value, p);
    } else if (const auto* l = std::get_if<LetDecl>(&item)) {
      Term t = to_term(l->value, p);
      typecheck(t, p.sig);
      p.lets.emplace(l->name, std::move(t));
      p.let_order.push_back(l->name);
    } else if (const auto* k = std::get_if<SkeletonDecl>(&item)) {
      p.skeletons.emplace(k->name, skeleton_of(*k, p));
      p.skeleton_order.push_back(k->name);
    }
  }
  return p;
}

Interpretation interpretation(const Program& p, const RunConfig& cfg) {
  return random_interpretation(p.sig, cfg.seed, 9, cfg.mode, &p.fixed);
}

namespace {

std::string upper(const char* s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

struct Emitter {
  const RunConfig& cfg;
  std::ostream& out;
  std::size_t pass = 0, fail = 0, inapplicable = 0;

  void operator()(const CheckReport& r) {
    if (r.verdict == Verdict::Pass) ++pass;
    else if (r.verdict == Verdict::Fail) ++fail;
    else ++inapplicable;
    if (cfg.json) {
      out << r.to_json().dump() << "\n";
      return;
    }
    out << upper(verdict_name(r.verdict)) << " " << r.name << " " << r.params.dump() << "\n";
    if (!r.note.empty()) out << "  note: " << r.note << "\n";
    if (r.verdict == Verdict::Fail && !r.witness.is_null()) out << "  witness: " << r.witness.dump() << "\n";
  }
};

CheckReport check_eq_report(const CheckEq& c, const Program& p, const RunConfig& cfg, std::uint64_t seed) {
  const Term lhs = to_term(c.lhs, p);
  const Term rhs = to_term(c.rhs, p);
  RunConfig seeded = cfg;
  seeded.seed = seed;
  const Interpretation interp = interpretation(p, seeded);
  CheckReport r;
  r.name = "check_eq";
  r.params = {{"lhs", print(c.lhs)}, {"rhs", print(c.rhs)}, {"seed", seed}, {"mode", mode_name(cfg.mode)},
              {"line", c.pos.line}};
  if (check_eq(lhs, rhs, interp)) {
    r.verdict = Verdict::Pass;
  } else {
    r.verdict = Verdict::Fail;
    r.witness = {{"lhs", matrix_to_json(eval(lhs, interp))}, {"rhs", matrix_to_json(eval(rhs, interp))}};
  }
  return r;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const TypeError& e) {
    err << "type error: " << e.what() << "\n";
    return kExitType;
  } catch (const SignatureError& e) {
    err << "type error: " << e.what() << "\n";
    return kExitType;
  } catch (const StructureError& e) {
    err << "type error: " << e.what() << "\n";
    return kExitType;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace

int run(const RunConfig& cfg, const Ast& ast, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.max_dim < 1) throw Error("max-dim must be at least 1");
    const Program p = elaborate(ast);
    Emitter emit{cfg, out};
    for (const auto& item : ast.items) {
      if (const auto* c = std::get_if<CheckEq>(&item)) {
        if (c->seeds.empty()) {
          emit(check_eq_report(*c, p, cfg, cfg.seed));
        } else {
          for (auto s : c->seeds) emit(check_eq_report(*c, p, cfg, s));
        }
      } else if (const auto* t = std::get_if<CheckTheorem>(&item)) {
        SuiteOptions o;
        o.mode = cfg.mode;
        o.seed = cfg.seed;
        o.max_dim = cfg.max_dim;
        o.dims.assign(t->dims.begin(), t->dims.end());
        o.seeds = t->seeds;
        if (t->count) o.count = static_cast<std::size_t>(*t->count);
        run_suite(t->name, o, [&](const CheckReport& r) { emit(r); });
      }
    }
    if (!cfg.json)
      out << "summary: " << emit.pass << " pass, " << emit.fail << " fail, " << emit.inapplicable
          << " inapplicable\n";
    return emit.fail > 0 ? kExitFail : kExitPass;
  });
}

int run_source(const RunConfig& cfg, const std::string& source, std::ostream& out, std::ostream& err) {
  Ast ast;
  const int rc = guarded(err, [&] {
    ast = parse(source);
    return kExitPass;
  });
  if (rc != kExitPass) return rc;
  return run(cfg, ast, out, err);
}

int eval_source(const RunConfig& cfg, const std::string& source, const std::string& name, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    const Program p = elaborate(parse(source));
    auto it = p.lets.find(name);
    if (it == p.lets.end()) throw Error("no let-bound term named '" + name + "'");
    const TypedTerm t = typecheck(it->second, p.sig);
    const QMatrix m = eval(t.term, interpretation(p, cfg));
    if (cfg.json) {
      nlohmann::json j{{"term", name}, {"dom", t.dom.str()}, {"cod", t.cod.str()}, {"matrix", matrix_to_json(m)}};
      out << j.dump() << "\n";
    } else {
      out << name << " : " << t.dom.str() << " -> " << t.cod.str() << "\n";
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).get_str();
        out << "\n";
      }
    }
    return kExitPass;
  });
}

int export_dot_source(const std::string& source, const std::optional<std::string>& name, std::ostream& out,
                      std::ostream& err) {
  return guarded(err, [&] {
    const Program p = elaborate(parse(source));
    if (name) {
      auto it = p.skeletons.find(*name);
      if (it == p.skeletons.end()) throw Error("no skeleton named '" + *name + "'");
      out << skeleton_to_dot(it->second, p.sig);
      return kExitPass;
    }
    for (const auto& n : p.skeleton_order) out << skeleton_to_dot(p.skeletons.at(n), p.sig);
    return kExitPass;
  });
}

void list_theorems(bool json, std::ostream& out) {
  for (const auto& s : theorem_suites()) {
    if (json) {
      out << nlohmann::json{{"name", s.name}, {"check", s.check}, {"summary", s.summary}, {"arity", s.arity}}.dump()
          << "\n";
    } else {
      out << s.name << "  " << s.check << "  " << s.summary << "\n";
    }
  }
}

}  // namespace hopt
