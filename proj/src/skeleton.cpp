#include "hopt/skeleton.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hopt/constructions.hpp"
#include "hopt/errors.hpp"

namespace hopt {

std::string Endpoint::str() const { return port ? name + "." + std::to_string(*port) : name; }

Obj SkeletonNode::hole_type() const { return arrow(tensor_list(inputs), tensor_list(outputs)); }

std::string SkeletonWire::str() const { return source.str() + " -> " + target.str(); }

namespace {

struct Layout {
  const SkeletonNode* node(const std::string& id) const {
    auto it = nodes.find(id);
    return it == nodes.end() ? nullptr : it->second;
  }
  std::map<std::string, const SkeletonNode*> nodes;
  std::map<std::string, Obj> inputs;
  std::map<std::string, Obj> outputs;
  // target endpoint -> source endpoint
  std::map<Endpoint, Endpoint> feeds;
};

[[noreturn]] void fail(const CircuitSkeleton& sk, const std::string& msg) {
  throw StructureError("skeleton '" + sk.name + "': " + msg);
}

Layout layout_of(const CircuitSkeleton& sk, const Signature& sig) {
  Layout l;
  std::set<std::string> names;
  auto claim = [&](const std::string& n) {
    if (!names.insert(n).second) fail(sk, "duplicate name '" + n + "'");
  };
  for (const auto& [n, o] : sk.inputs) {
    claim(n);
    if (!is_first_order(o, sig)) fail(sk, "global input '" + n + "' is not first-order");
    l.inputs.emplace(n, o);
  }
  for (const auto& [n, o] : sk.outputs) {
    claim(n);
    if (!is_first_order(o, sig)) fail(sk, "global output '" + n + "' is not first-order");
    l.outputs.emplace(n, o);
  }
  for (const auto& node : sk.nodes) {
    claim(node.id);
    for (const auto& o : node.inputs)
      if (!is_first_order(o, sig)) fail(sk, "node '" + node.id + "' has a higher-order input port");
    for (const auto& o : node.outputs)
      if (!is_first_order(o, sig)) fail(sk, "node '" + node.id + "' has a higher-order output port");
    l.nodes.emplace(node.id, &node);
  }

  std::set<Endpoint> used_sources;
  for (const auto& w : sk.wires) {
    Obj src_type = Obj::unit();
    if (w.source.port) {
      const SkeletonNode* n = l.node(w.source.name);
      if (!n) fail(sk, "wire '" + w.str() + "': unknown node '" + w.source.name + "'");
      if (*w.source.port >= n->outputs.size()) fail(sk, "wire '" + w.str() + "': no such output port");
      src_type = n->outputs[*w.source.port];
    } else {
      auto it = l.inputs.find(w.source.name);
      if (it == l.inputs.end()) fail(sk, "wire '" + w.str() + "': '" + w.source.name + "' is not a global input");
      src_type = it->second;
    }
    Obj dst_type = Obj::unit();
    if (w.target.port) {
      const SkeletonNode* n = l.node(w.target.name);
      if (!n) fail(sk, "wire '" + w.str() + "': unknown node '" + w.target.name + "'");
      if (*w.target.port >= n->inputs.size()) fail(sk, "wire '" + w.str() + "': no such input port");
      dst_type = n->inputs[*w.target.port];
    } else {
      auto it = l.outputs.find(w.target.name);
      if (it == l.outputs.end())
        fail(sk, "wire '" + w.str() + "': '" + w.target.name + "' is not a global output");
      dst_type = it->second;
    }
    if (src_type != dst_type)
      fail(sk, "wire '" + w.str() + "': type mismatch " + src_type.str() + " vs " + dst_type.str());
    if (w.type && *w.type != src_type)
      fail(sk, "wire '" + w.str() + "': declared type " + w.type->str() + " but ports carry " + src_type.str());
    if (!used_sources.insert(w.source).second) fail(sk, "wire '" + w.str() + "': source already used");
    if (!l.feeds.emplace(w.target, w.source).second) fail(sk, "wire '" + w.str() + "': target already used");
  }

  for (const auto& [n, o] : sk.inputs)
    if (!used_sources.count({n, std::nullopt})) fail(sk, "global input '" + n + "' is not connected");
  for (const auto& [n, o] : sk.outputs)
    if (!l.feeds.count({n, std::nullopt})) fail(sk, "global output '" + n + "' is not connected");
  for (const auto& node : sk.nodes) {
    for (std::size_t p = 0; p < node.inputs.size(); ++p)
      if (!l.feeds.count({node.id, p})) fail(sk, "node '" + node.id + "' input " + std::to_string(p) + " is not connected");
    for (std::size_t p = 0; p < node.outputs.size(); ++p)
      if (!used_sources.count({node.id, p}))
        fail(sk, "node '" + node.id + "' output " + std::to_string(p) + " is not connected");
  }
  return l;
}

std::vector<std::string> topo_order(const CircuitSkeleton& sk, const Layout& l) {
  std::map<std::string, std::size_t> indegree;
  std::map<std::string, std::set<std::string>> succ;
  for (const auto& node : sk.nodes) indegree[node.id];
  for (const auto& [dst, src] : l.feeds)
    if (dst.port && src.port && succ[src.name].insert(dst.name).second) ++indegree[dst.name];
  std::set<std::string> ready;
  for (const auto& [id, d] : indegree)
    if (d == 0) ready.insert(id);
  std::vector<std::string> order;
  while (!ready.empty()) {
    const std::string id = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(id);
    for (const auto& s : succ[id])
      if (--indegree[s] == 0) ready.insert(s);
  }
  if (order.size() != sk.nodes.size()) {
    for (const auto& [id, d] : indegree)
      if (d > 0) fail(sk, "cycle through node '" + id + "'");
  }
  return order;
}

struct Live {
  Endpoint key;  // "#hole" port marks the hole resource of a node
  Obj type;
};

std::vector<Obj> types_of(const std::vector<Live>& items) {
  std::vector<Obj> out;
  for (const auto& i : items) out.push_back(i.type);
  return out;
}

// Reorders `live` so the keyed items come first, in order; returns the wiring.
Term bring_to_front(std::vector<Live>& live, const std::vector<Endpoint>& keys) {
  std::vector<std::size_t> perm;
  std::vector<bool> taken(live.size(), false);
  for (const auto& k : keys) {
    std::size_t i = 0;
    while (i < live.size() && (taken[i] || !(live[i].key == k))) ++i;
    perm.push_back(i);
    taken[i] = true;
  }
  for (std::size_t i = 0; i < live.size(); ++i)
    if (!taken[i]) perm.push_back(i);
  const Term t = permute(types_of(live), perm);
  std::vector<Live> next;
  for (auto i : perm) next.push_back(live[i]);
  live = std::move(next);
  return t;
}

constexpr std::size_t kHolePort = static_cast<std::size_t>(-1);

}  // namespace

std::vector<std::string> validate_skeleton(const CircuitSkeleton& sk, const Signature& sig) {
  return topo_order(sk, layout_of(sk, sig));
}

TypedTerm skeleton_to_term(const CircuitSkeleton& sk, const Signature& sig) {
  const Layout l = layout_of(sk, sig);
  const std::vector<std::string> order = topo_order(sk, l);

  std::vector<Live> live;
  for (const auto& id : order) live.push_back({{id, kHolePort}, l.node(id)->hole_type()});
  for (const auto& [n, o] : sk.inputs) live.push_back({{n, std::nullopt}, o});
  const Obj dom = tensor_list(types_of(live));

  std::vector<Term> steps;
  for (const auto& id : order) {
    const SkeletonNode& node = *l.node(id);
    std::vector<Endpoint> keys{{id, kHolePort}};
    for (std::size_t p = 0; p < node.inputs.size(); ++p) keys.push_back(l.feeds.at({id, p}));
    steps.push_back(bring_to_front(live, keys));

    std::vector<Obj> head = types_of(live);
    std::vector<Obj> rest(head.begin() + static_cast<std::ptrdiff_t>(keys.size()), head.end());
    head.resize(keys.size());
    const std::vector<Obj> hole{head[0]};
    const Obj rest_obj = tensor_list(rest);
    steps.push_back(split(head, rest));
    steps.push_back(Term::tensor(split(hole, node.inputs), Term::id(rest_obj)));
    steps.push_back(Term::tensor(Term::eps(tensor_list(node.inputs), tensor_list(node.outputs)), Term::id(rest_obj)));
    steps.push_back(concat(node.outputs, rest));

    std::vector<Live> next;
    for (std::size_t p = 0; p < node.outputs.size(); ++p) next.push_back({{id, p}, node.outputs[p]});
    next.insert(next.end(), live.begin() + static_cast<std::ptrdiff_t>(keys.size()), live.end());
    live = std::move(next);
  }
  std::vector<Endpoint> out_keys;
  std::vector<Obj> out_types;
  for (const auto& [n, o] : sk.outputs) {
    out_keys.push_back(l.feeds.at({n, std::nullopt}));
    out_types.push_back(o);
  }
  steps.push_back(bring_to_front(live, out_keys));
  return {chain(steps), dom, tensor_list(out_types)};
}

bool is_comb(const CircuitSkeleton& sk, const Signature& sig) {
  const Layout l = layout_of(sk, sig);
  const auto order = topo_order(sk, l);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    bool linked = false;
    for (const auto& [dst, src] : l.feeds)
      if (dst.port && src.port && src.name == order[i] && dst.name == order[i + 1]) linked = true;
    if (!linked) return false;
  }
  return true;
}

QMatrix fill_holes(const CircuitSkeleton& sk, const std::map<std::string, QMatrix>& fills,
                   const Interpretation& interp) {
  const auto& sig = interp.sig();
  const TypedTerm t = skeleton_to_term(sk, sig);
  const auto order = validate_skeleton(sk, sig);
  std::map<std::string, const SkeletonNode*> by_id;
  for (const auto& n : sk.nodes) by_id[n.id] = &n;
  QMatrix state = QMatrix::identity(1);
  for (const auto& id : order) {
    auto it = fills.find(id);
    if (it == fills.end()) throw AssignmentError("hole '" + id + "' has no process");
    const SkeletonNode& n = *by_id[id];
    const Obj a = tensor_list(n.inputs), b = tensor_list(n.outputs);
    const QMatrix& f = it->second;
    if (f.rows() != interp.dim(b) || f.cols() != interp.dim(a))
      throw AssignmentError("hole '" + id + "' expects a " + std::to_string(interp.dim(b)) + "x" +
                            std::to_string(interp.dim(a)) + " process");
    if (interp.mode() == Mode::Causal && is_causal_first_order(a, sig) && is_causal_first_order(b, sig) &&
        !is_stochastic(f))
      throw AssignmentError("hole '" + id + "': process is not stochastic");
    state = kron(state, static_vector(f));
  }
  for (const auto& [id, m] : fills)
    if (!by_id.count(id)) throw AssignmentError("no hole named '" + id + "'");
  std::size_t din = 1;
  for (const auto& [n, o] : sk.inputs) din *= interp.dim(o);
  return eval(t.term, interp) * kron(state, QMatrix::identity(din));
}

QMatrix fill_holes(const CircuitSkeleton& sk, const std::map<std::string, Term>& fills,
                   const Interpretation& interp) {
  std::map<std::string, QMatrix> mats;
  for (const auto& [id, t] : fills) {
    const TypedTerm tt = typecheck(t, interp.sig());
    for (const auto& n : sk.nodes)
      if (n.id == id && (tt.dom != tensor_list(n.inputs) || tt.cod != tensor_list(n.outputs)))
        throw AssignmentError("hole '" + id + "' has type " + n.hole_type().str() + " but the process is " +
                              tt.dom.str() + " -> " + tt.cod.str());
    mats.emplace(id, eval(t, interp));
  }
  return fill_holes(sk, mats, interp);
}

BMatrix signalling_analysis(const QMatrix& channel, const std::vector<Obj>& input_blocks,
                            const std::vector<Obj>& output_blocks, const Interpretation& interp) {
  if (interp.mode() != Mode::Causal) throw Inapplicable("signalling analysis needs causal mode");
  std::vector<std::size_t> din, dout;
  std::size_t nin = 1, nout = 1;
  for (const auto& o : input_blocks) {
    din.push_back(interp.dim(o));
    nin *= din.back();
  }
  for (const auto& o : output_blocks) {
    dout.push_back(interp.dim(o));
    nout *= dout.back();
  }
  if (channel.rows() != nout || channel.cols() != nin)
    throw StructureError("channel is " + std::to_string(channel.rows()) + "x" + std::to_string(channel.cols()) +
                         " but the partitions give " + std::to_string(nout) + "x" + std::to_string(nin));
  if (!is_stochastic(channel)) throw Inapplicable("channel is not stochastic");

  // stride of block i in the row-major input index
  std::vector<std::size_t> stride(din.size(), 1);
  for (std::size_t i = din.size(); i-- > 1;) stride[i - 1] = stride[i] * din[i];

  BMatrix out(input_blocks.size(), output_blocks.size());
  for (std::size_t j = 0; j < dout.size(); ++j) {
    QMatrix marg = QMatrix::identity(1);
    for (std::size_t k = 0; k < dout.size(); ++k)
      marg = kron(marg, k == j ? QMatrix::identity(dout[k]) : QMatrix(1, dout[k], std::vector<Rational>(dout[k], Rational(1))));
    const QMatrix m = marg * channel;
    for (std::size_t i = 0; i < din.size(); ++i) {
      bool signals = false;
      for (std::size_t c = 0; c < nin && !signals; ++c) {
        const std::size_t digit = (c / stride[i]) % din[i];
        if (digit == 0) continue;
        const std::size_t base = c - digit * stride[i];
        signals = m.col(c) != m.col(base);
      }
      out(i, j) = signals;
    }
  }
  return out;
}

std::string skeleton_to_dot(const CircuitSkeleton& sk, const Signature& sig) {
  const Layout l = layout_of(sk, sig);
  const auto order = topo_order(sk, l);
  std::ostringstream os;
  os << "digraph \"" << sk.name << "\" {\n  rankdir=LR;\n";
  for (const auto& [n, o] : sk.inputs) os << "  \"" << n << "\" [shape=plaintext, label=\"" << n << " : " << o.str() << "\"];\n";
  for (const auto& id : order)
    os << "  \"" << id << "\" [shape=box, label=\"" << id << " : " << l.node(id)->hole_type().str() << "\"];\n";
  for (const auto& [n, o] : sk.outputs) os << "  \"" << n << "\" [shape=plaintext, label=\"" << n << " : " << o.str() << "\"];\n";
  for (const auto& w : sk.wires) {
    Obj t = w.source.port ? l.node(w.source.name)->outputs[*w.source.port] : l.inputs.at(w.source.name);
    os << "  \"" << w.source.name << "\" -> \"" << w.target.name << "\" [label=\"" << t.str() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hopt
