#include "hopt/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "hopt/errors.hpp"
#include "hopt/suites.hpp"

namespace hopt::dsl {

namespace {

// Argument shapes of the term constructors: o = object, t = term,
// s = skeleton name.
const std::map<std::string, std::string>& constructors() {
  static const std::map<std::string, std::string> table{
      {"id", "o"},        {"eps", "oo"},        {"eta", "o"},       {"seq", "ooo"},     {"par", "oooo"},
      {"delta", "ooo"},   {"hatid", "o"},       {"discard", "o"},   {"swap", "oo"},     {"lunit", "o"},
      {"lunit_inv", "o"}, {"runit", "o"},       {"runit_inv", "o"}, {"assoc", "ooo"},   {"assoc_inv", "ooo"},
      {"curry", "t"},     {"hat", "t"},         {"static", "t"},    {"inv", "t"},       {"name", "t"},
      {"dualiser", "o"},  {"lift", "oo"},       {"phi", "ooo"},     {"phi_inv", "ooo"}, {"arrow", "tt"},
      {"compile", "s"}};
  return table;
}

const std::vector<std::string> kKeywords{"signature", "base",   "gen",      "dim",      "causal",        "object",
                                         "let",       "skeleton", "input",  "output",   "node",          "wire",
                                         "check_eq",  "check_theorem", "dims", "seeds", "count",         "I"};

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const Pos pos{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, src.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    if (i + 1 < src.size()) {
      const std::string two = src.substr(i, 2);
      if (two == "=>" || two == "->") {
        out.push_back({Tok::Punct, two, pos});
        advance(2);
        continue;
      }
    }
    if (std::string("{}()[],;:.*=/-").find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), pos});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Ast file() {
    Ast ast;
    while (peek().kind != Tok::End) ast.items.push_back(item());
    return ast;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool is(const std::string& text) const {
    const Token& t = peek();
    return (t.kind == Tok::Punct || t.kind == Tok::Ident) && t.text == text;
  }
  bool accept(const std::string& text) {
    if (!is(text)) return false;
    next();
    return true;
  }
  [[noreturn]] void error(const std::string& expected) const {
    const Token& t = peek();
    throw ParseError("expected " + expected + " but found " + describe(t), t.pos.line, t.pos.col);
  }
  const Token& expect(const std::string& text) {
    if (!is(text)) error("'" + text + "'");
    return next();
  }
  void end_statement() { accept(";"); }

  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident) error(what);
    return next().text;
  }
  std::uint64_t integer(const std::string& what) {
    if (peek().kind != Tok::Int) error(what);
    const Token& t = next();
    try {
      return std::stoull(t.text);
    } catch (const std::exception&) {
      throw ParseError("integer out of range", t.pos.line, t.pos.col);
    }
  }

  // Declares a new top-level name.
  std::string declare(const std::string& what) {
    const Token& t = peek();
    const std::string n = ident(what);
    const auto& rw = reserved_words();
    if (std::find(rw.begin(), rw.end(), n) != rw.end())
      throw ParseError("'" + n + "' is reserved and cannot be declared", t.pos.line, t.pos.col);
    if (declared_.count(n)) throw ParseError("'" + n + "' is already declared", t.pos.line, t.pos.col);
    return n;
  }

  Item item() {
    const Token& t = peek();
    if (is("signature")) return signature();
    if (is("object")) {
      next();
      ObjectAlias a;
      a.pos = t.pos;
      a.name = declare("an object name");
      expect("=");
      a.value = obj();
      declared_.insert(a.name);
      objects_.insert(a.name);
      end_statement();
      return a;
    }
    if (is("let")) {
      next();
      LetDecl l;
      l.pos = t.pos;
      l.name = declare("a term name");
      expect("=");
      l.value = term();
      declared_.insert(l.name);
      terms_.insert(l.name);
      end_statement();
      return l;
    }
    if (is("skeleton")) return skeleton();
    if (is("check_eq")) {
      next();
      CheckEq c;
      c.pos = t.pos;
      expect("(");
      c.lhs = term();
      expect(",");
      c.rhs = term();
      expect(")");
      while (true) {
        if (accept("seeds")) {
          expect("=");
          c.seeds = int_list();
        } else {
          break;
        }
      }
      end_statement();
      return c;
    }
    if (is("check_theorem")) {
      next();
      CheckTheorem c;
      c.pos = t.pos;
      const Token& nt = peek();
      c.name = ident("a theorem name");
      if (!find_suite(c.name)) throw ParseError("unknown theorem suite '" + c.name + "'", nt.pos.line, nt.pos.col);
      while (true) {
        if (accept("dims")) {
          expect("=");
          c.dims = int_list();
        } else if (accept("seeds")) {
          expect("=");
          c.seeds = int_list();
        } else if (accept("count")) {
          expect("=");
          c.count = integer("an integer");
        } else {
          break;
        }
      }
      end_statement();
      return c;
    }
    error("a declaration or directive");
  }

  std::vector<std::uint64_t> int_list() {
    std::vector<std::uint64_t> out;
    expect("(");
    if (!is(")")) {
      out.push_back(integer("an integer"));
      while (accept(",")) out.push_back(integer("an integer"));
    }
    expect(")");
    return out;
  }

  SignatureBlock signature() {
    SignatureBlock s;
    s.pos = expect("signature").pos;
    expect("{");
    while (!accept("}")) {
      const Token& t = peek();
      if (accept("base")) {
        BaseDecl b;
        b.pos = t.pos;
        b.name = declare("a base object name");
        expect(":");
        expect("dim");
        b.dim = integer("a dimension");
        b.causal = accept("causal");
        declared_.insert(b.name);
        objects_.insert(b.name);
        s.bases.push_back(b);
      } else if (accept("gen")) {
        GenDecl g;
        g.pos = t.pos;
        g.name = declare("a generator name");
        expect(":");
        g.dom = obj();
        expect("->");
        g.cod = obj();
        if (accept("=")) g.matrix = matrix();
        declared_.insert(g.name);
        terms_.insert(g.name);
        s.gens.push_back(std::move(g));
      } else {
        error("'base', 'gen' or '}'");
      }
      end_statement();
    }
    return s;
  }

  Rational rational() {
    const bool neg = accept("-");
    const Token& t = peek();
    if (t.kind != Tok::Int) error("a number");
    Rational r(mpz_class(next().text, 10));
    if (accept("/")) {
      const Token& d = peek();
      if (d.kind != Tok::Int) error("a denominator");
      const mpz_class den(next().text, 10);
      if (den == 0) throw ParseError("zero denominator", d.pos.line, d.pos.col);
      r /= Rational(den);
    }
    return neg ? Rational(-r) : r;
  }

  MatrixLit matrix() {
    MatrixLit m;
    const Token& start = expect("[");
    do {
      std::vector<Rational> row;
      expect("[");
      row.push_back(rational());
      while (accept(",")) row.push_back(rational());
      expect("]");
      m.push_back(std::move(row));
    } while (accept(","));
    expect("]");
    for (const auto& row : m)
      if (row.size() != m[0].size()) throw ParseError("ragged matrix literal", start.pos.line, start.pos.col);
    return m;
  }

  ObjExpr obj() {
    ObjExpr left = obj_tensor();
    if (is("=>")) {
      const Pos p = next().pos;
      ObjExpr right = obj();
      return {ObjExpr::Kind::Arrow, "", {std::move(left), std::move(right)}, p};
    }
    return left;
  }

  ObjExpr obj_tensor() {
    ObjExpr acc = obj_atom();
    while (is("*")) {
      const Pos p = next().pos;
      ObjExpr right = obj_atom();
      acc = {ObjExpr::Kind::Tensor, "", {std::move(acc), std::move(right)}, p};
    }
    return acc;
  }

  ObjExpr obj_atom() {
    const Token& t = peek();
    if (accept("(")) {
      ObjExpr inner = obj();
      expect(")");
      return inner;
    }
    if (t.kind != Tok::Ident) error("an object");
    const std::string n = next().text;
    if (n == "I") return {ObjExpr::Kind::Unit, "", {}, t.pos};
    if (!objects_.count(n)) throw ParseError("unknown object '" + n + "'", t.pos.line, t.pos.col);
    return {ObjExpr::Kind::Name, n, {}, t.pos};
  }

  TermExpr term() {
    TermExpr left = term_tensor();
    if (is(".")) {
      const Pos p = next().pos;
      TermExpr right = term();
      TermExpr c;
      c.kind = TermExpr::Kind::Compose;
      c.terms = {std::move(left), std::move(right)};
      c.pos = p;
      return c;
    }
    return left;
  }

  TermExpr term_tensor() {
    TermExpr acc = term_atom();
    while (is("*")) {
      const Pos p = next().pos;
      TermExpr right = term_atom();
      TermExpr t;
      t.kind = TermExpr::Kind::Tensor;
      t.terms = {std::move(acc), std::move(right)};
      t.pos = p;
      acc = std::move(t);
    }
    return acc;
  }

  TermExpr term_atom() {
    const Token& t = peek();
    if (accept("(")) {
      TermExpr inner = term();
      expect(")");
      return inner;
    }
    if (t.kind != Tok::Ident) error("a term");
    const std::string n = next().text;
    TermExpr out;
    out.pos = t.pos;
    out.name = n;
    const auto& ctors = constructors();
    auto it = ctors.find(n);
    if (it == ctors.end()) {
      if (!terms_.count(n)) throw ParseError("unknown term '" + n + "'", t.pos.line, t.pos.col);
      out.kind = TermExpr::Kind::Ref;
      return out;
    }
    out.kind = TermExpr::Kind::Ctor;
    expect("(");
    const std::string& shape = it->second;
    for (std::size_t k = 0; k < shape.size(); ++k) {
      if (k > 0) expect(",");
      if (shape[k] == 'o') {
        out.objs.push_back(obj());
      } else if (shape[k] == 't') {
        out.terms.push_back(term());
      } else {
        const Token& st = peek();
        out.skeleton = ident("a skeleton name");
        if (!skeletons_.count(out.skeleton))
          throw ParseError("unknown skeleton '" + out.skeleton + "'", st.pos.line, st.pos.col);
      }
    }
    expect(")");
    return out;
  }

  std::vector<ObjExpr> port_list() {
    std::vector<ObjExpr> out;
    if (accept("[")) {
      if (!is("]")) {
        out.push_back(obj());
        while (accept(",")) out.push_back(obj());
      }
      expect("]");
    } else {
      out.push_back(obj_tensor());
    }
    return out;
  }

  EndpointExpr endpoint() {
    EndpointExpr e;
    e.pos = peek().pos;
    e.name = ident("a port or node name");
    if (accept(".")) e.port = integer("a port index");
    return e;
  }

  SkeletonDecl skeleton() {
    SkeletonDecl s;
    s.pos = expect("skeleton").pos;
    s.name = declare("a skeleton name");
    expect("{");
    while (!accept("}")) {
      const Token& t = peek();
      if (accept("input") || accept("output")) {
        PortDecl p;
        p.pos = t.pos;
        p.name = ident("a port name");
        expect(":");
        p.type = obj();
        (t.text == "input" ? s.inputs : s.outputs).push_back(std::move(p));
      } else if (accept("node")) {
        NodeDecl n;
        n.pos = t.pos;
        n.id = ident("a node name");
        expect(":");
        n.inputs = port_list();
        expect("->");
        n.outputs = port_list();
        s.nodes.push_back(std::move(n));
      } else if (accept("wire")) {
        WireDecl w;
        w.pos = t.pos;
        w.source = endpoint();
        expect("->");
        w.target = endpoint();
        if (accept(":")) w.type = obj();
        s.wires.push_back(std::move(w));
      } else {
        error("'input', 'output', 'node', 'wire' or '}'");
      }
      end_statement();
    }
    declared_.insert(s.name);
    skeletons_.insert(s.name);
    return s;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> declared_, objects_, terms_, skeletons_;
};

// --- printing ----------------------------------------------------------------

void print_obj(const ObjExpr& o, int ctx, std::string& out) {
  switch (o.kind) {
    case ObjExpr::Kind::Unit:
      out += "I";
      return;
    case ObjExpr::Kind::Name:
      out += o.name;
      return;
    case ObjExpr::Kind::Tensor: {
      const bool paren = ctx > 1;
      if (paren) out += "(";
      print_obj(o.args[0], 1, out);
      out += " * ";
      print_obj(o.args[1], 2, out);
      if (paren) out += ")";
      return;
    }
    case ObjExpr::Kind::Arrow: {
      const bool paren = ctx > 0;
      if (paren) out += "(";
      print_obj(o.args[0], 1, out);
      out += " => ";
      print_obj(o.args[1], 0, out);
      if (paren) out += ")";
      return;
    }
  }
}

// ctx 0: anywhere; 1: left of '.', 2: tensor operand
void print_term(const TermExpr& t, int ctx, std::string& out) {
  switch (t.kind) {
    case TermExpr::Kind::Ref:
      out += t.name;
      return;
    case TermExpr::Kind::Ctor: {
      out += t.name + "(";
      bool first = true;
      auto sep = [&] {
        if (!first) out += ", ";
        first = false;
      };
      for (const auto& o : t.objs) {
        sep();
        print_obj(o, 0, out);
      }
      for (const auto& a : t.terms) {
        sep();
        print_term(a, 0, out);
      }
      if (!t.skeleton.empty()) {
        sep();
        out += t.skeleton;
      }
      out += ")";
      return;
    }
    case TermExpr::Kind::Compose: {
      const bool paren = ctx > 0;
      if (paren) out += "(";
      print_term(t.terms[0], 1, out);
      out += " . ";
      print_term(t.terms[1], 0, out);
      if (paren) out += ")";
      return;
    }
    case TermExpr::Kind::Tensor: {
      const bool paren = ctx > 1;
      if (paren) out += "(";
      print_term(t.terms[0], 1, out);
      out += " * ";
      print_term(t.terms[1], 2, out);
      if (paren) out += ")";
      return;
    }
  }
}

std::string rational_text(const Rational& r) { return r.get_str(); }

std::string int_list_text(const std::vector<std::uint64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

std::string ports_text(const std::vector<ObjExpr>& ports) {
  std::string s = "[";
  for (std::size_t i = 0; i < ports.size(); ++i) s += (i ? ", " : "") + print(ports[i]);
  return s + "]";
}

std::string endpoint_text(const EndpointExpr& e) {
  return e.port ? e.name + "." + std::to_string(*e.port) : e.name;
}

}  // namespace

const std::vector<std::string>& reserved_words() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w = kKeywords;
    for (const auto& [n, shape] : constructors()) w.push_back(n);
    return w;
  }();
  return words;
}

Ast parse(const std::string& source) { return Parser(lex(source)).file(); }

std::string print(const ObjExpr& obj) {
  std::string out;
  print_obj(obj, 0, out);
  return out;
}

std::string print(const TermExpr& term) {
  std::string out;
  print_term(term, 0, out);
  return out;
}

std::string print(const Ast& ast) {
  std::ostringstream os;
  for (const auto& item : ast.items) {
    if (const auto* s = std::get_if<SignatureBlock>(&item)) {
      os << "signature {\n";
      for (const auto& b : s->bases) os << "  base " << b.name << " : dim " << b.dim << (b.causal ? " causal" : "") << ";\n";
      for (const auto& g : s->gens) {
        os << "  gen " << g.name << " : " << print(g.dom) << " -> " << print(g.cod);
        if (g.matrix) {
          os << " = [";
          for (std::size_t i = 0; i < g.matrix->size(); ++i) {
            os << (i ? ", " : "") << "[";
            const auto& row = (*g.matrix)[i];
            for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << rational_text(row[j]);
            os << "]";
          }
          os << "]";
        }
        os << ";\n";
      }
      os << "}\n";
    } else if (const auto* a = std::get_if<ObjectAlias>(&item)) {
      os << "object " << a->name << " = " << print(a->value) << ";\n";
    } else if (const auto* l = std::get_if<LetDecl>(&item)) {
      os << "let " << l->name << " = " << print(l->value) << ";\n";
    } else if (const auto* k = std::get_if<SkeletonDecl>(&item)) {
      os << "skeleton " << k->name << " {\n";
      for (const auto& p : k->inputs) os << "  input " << p.name << " : " << print(p.type) << ";\n";
      for (const auto& p : k->outputs) os << "  output " << p.name << " : " << print(p.type) << ";\n";
      for (const auto& n : k->nodes)
        os << "  node " << n.id << " : " << ports_text(n.inputs) << " -> " << ports_text(n.outputs) << ";\n";
      for (const auto& w : k->wires) {
        os << "  wire " << endpoint_text(w.source) << " -> " << endpoint_text(w.target);
        if (w.type) os << " : " << print(*w.type);
        os << ";\n";
      }
      os << "}\n";
    } else if (const auto* c = std::get_if<CheckEq>(&item)) {
      os << "check_eq(" << print(c->lhs) << ", " << print(c->rhs) << ")";
      if (!c->seeds.empty()) os << " seeds=" << int_list_text(c->seeds);
      os << ";\n";
    } else if (const auto* t = std::get_if<CheckTheorem>(&item)) {
      os << "check_theorem " << t->name;
      if (!t->dims.empty()) os << " dims=" << int_list_text(t->dims);
      if (!t->seeds.empty()) os << " seeds=" << int_list_text(t->seeds);
      if (t->count) os << " count=" << *t->count;
      os << ";\n";
    }
  }
  return os.str();
}

}  // namespace hopt::dsl
