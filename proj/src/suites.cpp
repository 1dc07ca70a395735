#include "hopt/suites.hpp"

#include <random>

#include "hopt/constructions.hpp"
#include "hopt/errors.hpp"

namespace hopt {

std::uint64_t instance_seed(std::uint64_t s, std::uint64_t k) {
  // splitmix64 step
  std::uint64_t z = s + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

using Tuple = std::vector<std::size_t>;
const char* const kNames[] = {"A", "B", "C", "D"};

Obj base(std::size_t i) { return Obj::base(kNames[i]); }

Signature bases(const Tuple& dims) {
  Signature sig;
  for (std::size_t i = 0; i < dims.size(); ++i) sig.add_base(kNames[i], dims[i], true);
  return sig;
}

std::vector<Tuple> all_tuples(std::size_t arity, std::size_t max_dim) {
  std::vector<Tuple> out;
  Tuple t(arity, 1);
  while (true) {
    out.push_back(t);
    std::size_t k = arity;
    while (k > 0 && ++t[k - 1] > max_dim) t[--k] = 1;
    if (k == 0) break;
  }
  return out;
}

std::vector<Tuple> tuples(const SuiteOptions& o, std::size_t arity, const std::vector<Tuple>& defaults = {}) {
  if (!o.dims.empty()) {
    if (o.dims.size() != arity)
      throw Error("suite expects " + std::to_string(arity) + " dimensions, got " + std::to_string(o.dims.size()));
    for (auto d : o.dims)
      if (d < 1) throw Error("dimensions must be positive");
    return {o.dims};
  }
  if (defaults.empty()) return all_tuples(arity, o.max_dim);
  std::vector<Tuple> out;
  for (const auto& t : defaults) {
    bool ok = true;
    for (auto d : t) ok = ok && d <= o.max_dim;
    if (ok) out.push_back(t);
  }
  return out;
}

std::vector<std::uint64_t> seeds(const SuiteOptions& o, std::size_t default_count) {
  if (!o.seeds.empty()) return o.seeds;
  std::vector<std::uint64_t> out;
  const std::size_t n = o.count.value_or(default_count);
  for (std::size_t k = 0; k < n; ++k) out.push_back(instance_seed(o.seed, k));
  return out;
}

void emit(const ReportSink& sink, CheckReport r, const std::string& suite, const Tuple& dims, Mode mode,
          std::optional<std::uint64_t> seed = std::nullopt) {
  r.params["suite"] = suite;
  r.params["dims"] = dims;
  r.params["mode"] = mode_name(mode);
  if (seed) r.params["seed"] = *seed;
  sink(r);
}

using Runner = std::function<void(const SuiteOptions&, const ReportSink&)>;

// One report per dimension tuple.
Runner per_tuple(std::string name, std::size_t arity, std::function<CheckReport(const Interpretation&)> check,
                 std::vector<Tuple> defaults = {}, std::optional<Mode> forced = std::nullopt) {
  return [=](const SuiteOptions& o, const ReportSink& sink) {
    const Mode mode = forced.value_or(o.mode);
    for (const auto& t : tuples(o, arity, defaults)) {
      const Interpretation interp(bases(t), mode);
      emit(sink, check(interp), name, t, mode);
    }
  };
}

// One report per (tuple, seed); `sig_of` adds generators to the bases.
Runner per_seed(std::string name, std::size_t arity, std::size_t count,
                std::function<Signature(const Tuple&)> sig_of,
                std::function<CheckReport(const Interpretation&, std::uint64_t)> check,
                std::vector<Tuple> defaults = {}, std::optional<Mode> forced = std::nullopt) {
  return [=](const SuiteOptions& o, const ReportSink& sink) {
    const Mode mode = forced.value_or(o.mode);
    for (const auto& t : tuples(o, arity, defaults)) {
      const Signature sig = sig_of(t);
      for (auto s : seeds(o, count)) {
        const Interpretation interp = random_interpretation(sig, s, 9, mode);
        emit(sink, check(interp, s), name, t, mode, s);
      }
    }
  };
}

// Seeded instances whose dimension tuple is itself drawn from the seed.
Runner seeded_dims(std::string name, std::size_t arity, std::size_t count,
                   std::function<Signature(const Tuple&)> sig_of,
                   std::function<CheckReport(const Interpretation&)> check) {
  return [=](const SuiteOptions& o, const ReportSink& sink) {
    for (auto s : seeds(o, count)) {
      Tuple t = o.dims;
      if (t.empty()) {
        std::mt19937_64 rng(s);
        for (std::size_t i = 0; i < arity; ++i) t.push_back(1 + rng() % o.max_dim);
      } else if (t.size() != arity) {
        throw Error("suite expects " + std::to_string(arity) + " dimensions, got " + std::to_string(t.size()));
      }
      const Interpretation interp = random_interpretation(sig_of(t), s, 9, o.mode);
      emit(sink, check(interp), name, t, o.mode, s);
    }
  };
}

Signature with_gen(const Tuple& t, const std::string& g, const Obj& dom, const Obj& cod) {
  Signature sig = bases(t);
  sig.add_generator(g, dom, cod);
  return sig;
}

const Obj I = Obj::unit();

std::vector<SuiteInfo> build() {
  const Obj A = base(0), B = base(1), C = base(2), D = base(3);
  std::vector<SuiteInfo> s;
  auto add = [&](std::string name, std::string check, std::string summary, std::size_t arity, Runner r) {
    s.push_back({std::move(name), std::move(check), std::move(summary), arity, std::move(r)});
  };

  add("def2", "check_insertion", "insertion recovers every generator f : A -> B from hat(f)", 2,
      per_seed("def2", 2, 25, [=](const Tuple& t) { return with_gen(t, "f", A, B); },
               [](const Interpretation& i, std::uint64_t) { return check_insertion("f", i); }));
  add("injectivity", "check_complete_injectivity", "the insertion map E^C_{A,B} has full column rank", 3,
      per_tuple("injectivity", 3, [=](const Interpretation& i) { return check_complete_injectivity(A, B, C, i); }));
  add("def3_seq", "check_seq_equation", "defining equation of sequential composition", 3,
      per_tuple("def3_seq", 3, [=](const Interpretation& i) { return check_seq_equation(A, B, C, i); }));
  add("def3_par", "check_par_equation", "defining equation of parallel composition", 4,
      per_tuple("def3_par", 4, [=](const Interpretation& i) { return check_par_equation(A, B, C, D, i); }));
  add("axiom4", "check_eps_unit_iso", "eps(I,A) is invertible with inverse eta(A)", 1,
      per_tuple("axiom4", 1, [=](const Interpretation& i) { return check_eps_unit_iso(A, i); }));
  add("thm1", "check_currying", "curry(h) satisfies the currying equation and is its unique solution", 3,
      per_seed("thm1", 3, 25, [=](const Tuple& t) { return with_gen(t, "h", C * A, B); },
               [](const Interpretation& i, std::uint64_t) { return check_currying("h", i); }));
  add("composition", "check_composition_laws", "associativity and hatid unit laws of seq", 4,
      seeded_dims("composition", 4, 50,
                  [=](const Tuple& t) {
                    Signature sig = bases(t);
                    sig.add_generator("f", A, B).add_generator("g", B, C).add_generator("k", C, D);
                    return sig;
                  },
                  [](const Interpretation& i) { return check_composition_laws(i); }));
  add("bifunctor", "check_bifunctor", "functoriality of the arrow bifunctor", 2,
      seeded_dims("bifunctor", 2, 50,
                  [=](const Tuple& t) {
                    Signature sig = bases(t);
                    sig.add_generator("f1", B, A).add_generator("g1", B, A);
                    sig.add_generator("f2", A, B).add_generator("g2", A, B);
                    return sig;
                  },
                  [](const Interpretation& i) { return check_bifunctor(i); }));
  add("canonical", "check_canonical_existence", "defining equations of d_A, T_AB and phi, and phi inverse", 3,
      per_tuple("canonical", 3, [=](const Interpretation& i) { return check_canonical_existence(A, B, C, i); }));
  add("causal", "check_causal", "a first-order object has a unique effect", 1,
      per_tuple("causal", 1, [=](const Interpretation& i) { return check_causal(A, i); }));
  add("enough_states", "check_enough_states", "states of A * B span the space", 2,
      per_tuple("enough_states", 2, [=](const Interpretation& i) { return check_enough_states(A * B, i); }));
  add("enough_effects", "check_enough_effects", "effects of A * B span the space, dualisation injective", 2,
      per_tuple("enough_effects", 2, [=](const Interpretation& i) { return check_enough_effects(A * B, i); }));
  add("no_correlation", "check_no_correlation_single_state",
      "causal states on B * (A => I) factor through the unique state of A => I", 2,
      per_seed("no_correlation", 2, 10, bases,
               [=](const Interpretation& i, std::uint64_t seed) {
                 const Obj y = dual(A);
                 return check_no_correlation_single_state(y, B, {random_causal_state(B * y, seed, i)}, i);
               },
               {}, Mode::Causal));
  add("thm4", "check_non_signalling", "processes induced by causal states on (A => B) * C are non-signalling", 3,
      per_seed("thm4", 3, 100, bases,
               [=](const Interpretation& i, std::uint64_t seed) {
                 return check_non_signalling(A, B, C, random_causal_state(arrow(A, B) * C, seed, i), i);
               },
               {{2, 2, 2}, {2, 2, 3}, {3, 2, 2}}, Mode::Causal));
  add("thm5", "check_tensor_vs_bipartite", "swap has no preimage among causal states of (A => B) * (B => A)", 2,
      per_tuple("thm5", 2, [=](const Interpretation& i) { return check_tensor_vs_bipartite(A, B, i); },
                {{2, 2}, {2, 3}}, Mode::Causal));
  add("adjoint_dynamics", "check_adjoint_dynamics", "T_AB is invertible and matches its decomposition", 2,
      per_tuple("adjoint_dynamics", 2, [=](const Interpretation& i) { return check_adjoint_dynamics(A, B, i); }));
  add("double_dual", "check_double_dual", "d_A is invertible and matches its decomposition", 1,
      per_tuple("double_dual", 1, [=](const Interpretation& i) { return check_double_dual(A, i); }));
  add("thm6", "check_double_dual_equivalence", "the three double-dual statements agree on {I, A, B, A*, B*}", 2,
      per_tuple("thm6", 2,
                [=](const Interpretation& i) { return check_double_dual_equivalence({I, A, B, dual(A), dual(B)}, i); }));
  add("thm7", "check_double_dual_lifting", "d_{A => B} decomposes through m and is invertible", 2,
      per_tuple("thm7", 2, [=](const Interpretation& i) { return check_double_dual_lifting(A, B, i); },
                {{2, 2}, {2, 3}, {3, 2}}));
  add("right_inverse", "check_right_inverse", "(d_A => I) is a right inverse of d_{A => I}", 1,
      per_tuple("right_inverse", 1, [=](const Interpretation& i) { return check_right_inverse(A, i); }));
  add("thm9", "check_no_signalling_states",
      "pairing isomorphism and effect-independent marginals of causal states on (A => B) * C", 3,
      per_seed("thm9", 3, 100, bases,
               [=](const Interpretation& i, std::uint64_t seed) {
                 return check_no_signalling_states(A, B, C, {random_causal_state(arrow(A, B) * C, seed, i)}, i);
               },
               {{2, 2, 3}}, Mode::Causal));
  add("thm2", "check_trivial_if_causal", "a fully causal model is trivial", 2,
      per_tuple("thm2", 2, [](const Interpretation& i) { return check_trivial_if_causal(i); }));
  return s;
}

}  // namespace

const std::vector<SuiteInfo>& theorem_suites() {
  static const std::vector<SuiteInfo> suites = build();
  return suites;
}

const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : theorem_suites())
    if (s.name == name) return &s;
  return nullptr;
}

void run_suite(const std::string& name, const SuiteOptions& opts, const ReportSink& sink) {
  const SuiteInfo* s = find_suite(name);
  if (!s) throw Error("unknown theorem suite '" + name + "'");
  s->run(opts, sink);
}

std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& opts) {
  std::vector<CheckReport> out;
  run_suite(name, opts, [&](const CheckReport& r) { out.push_back(r); });
  return out;
}

}  // namespace hopt
