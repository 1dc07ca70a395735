#include <doctest.h>

#include <random>

#include "hopt/checks.hpp"
#include "hopt/constructions.hpp"
#include "hopt/errors.hpp"
#include "hopt/skeleton.hpp"
#include "support.hpp"

using namespace hopt;
using hopt::testing::B;

namespace {

SkeletonWire W(std::string s, std::optional<std::size_t> sp, std::string t, std::optional<std::size_t> tp) {
  return {{std::move(s), sp}, {std::move(t), tp}, std::nullopt};
}

Signature dims_sig(std::size_t a, std::size_t b, std::size_t m, std::size_t c) {
  Signature sig;
  sig.add_base("A", a, true).add_base("B", b, true).add_base("M", m, true).add_base("C", c, true);
  sig.add_base("X", 2, true);
  return sig;
}

// a -> h1 : A -> B * M -> h2 : B * M -> C -> c
CircuitSkeleton chain2() {
  CircuitSkeleton sk;
  sk.name = "chain2";
  sk.inputs = {{"a", B("A")}};
  sk.outputs = {{"c", B("C")}};
  sk.nodes = {{"h1", {B("A")}, {B("B"), B("M")}}, {"h2", {B("B"), B("M")}, {B("C")}}};
  sk.wires = {W("a", {}, "h1", 0), W("h1", 0, "h2", 0), W("h1", 1, "h2", 1), W("h2", 0, "c", {})};
  return sk;
}

// holes A -> B, B -> M, M -> C in a row
CircuitSkeleton chain3() {
  CircuitSkeleton sk;
  sk.name = "chain3";
  sk.inputs = {{"a", B("A")}};
  sk.outputs = {{"c", B("C")}};
  sk.nodes = {{"p", {B("A")}, {B("B")}}, {"q", {B("B")}, {B("M")}}, {"r", {B("M")}, {B("C")}}};
  sk.wires = {W("a", {}, "p", 0), W("p", 0, "q", 0), W("q", 0, "r", 0), W("r", 0, "c", {})};
  return sk;
}

CircuitSkeleton chain_of(const Obj& a, const Obj& mid, const Obj& c) {
  CircuitSkeleton sk;
  sk.name = "two";
  sk.inputs = {{"a", a}};
  sk.outputs = {{"c", c}};
  sk.nodes = {{"u", {a}, {mid}}, {"v", {mid}, {c}}};
  sk.wires = {W("a", {}, "u", 0), W("u", 0, "v", 0), W("v", 0, "c", {})};
  return sk;
}

QMatrix swap_formula(std::size_t a, std::size_t b) {
  QMatrix s(b * a, a * b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) s(j * a + i, i * b + j) = 1;
  return s;
}

// Brute force: does changing input block i (others fixed) change the
// marginal on output block j?
std::vector<std::vector<bool>> signalling_oracle(const QMatrix& ch, const std::vector<std::size_t>& din,
                                                 const std::vector<std::size_t>& dout) {
  std::size_t nin = 1, nout = 1;
  for (auto d : din) nin *= d;
  for (auto d : dout) nout *= d;
  auto digits = [](std::size_t idx, const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> out(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
      out[k] = idx % dims[k];
      idx /= dims[k];
    }
    return out;
  };
  std::vector<std::vector<bool>> res(din.size(), std::vector<bool>(dout.size(), false));
  for (std::size_t j = 0; j < dout.size(); ++j) {
    // marginal[v][col]
    std::vector<std::vector<Rational>> marg(dout[j], std::vector<Rational>(nin));
    for (std::size_t r = 0; r < nout; ++r)
      for (std::size_t c = 0; c < nin; ++c) marg[digits(r, dout)[j]][c] += ch(r, c);
    for (std::size_t c1 = 0; c1 < nin; ++c1)
      for (std::size_t c2 = 0; c2 < nin; ++c2) {
        const auto d1 = digits(c1, din), d2 = digits(c2, din);
        std::size_t diff = 0, where = 0;
        for (std::size_t k = 0; k < din.size(); ++k)
          if (d1[k] != d2[k]) {
            ++diff;
            where = k;
          }
        if (diff != 1) continue;
        for (std::size_t v = 0; v < dout[j]; ++v)
          if (marg[v][c1] != marg[v][c2]) res[where][j] = true;
      }
  }
  return res;
}

std::vector<std::vector<bool>> to_bools(const BMatrix& b) {
  std::vector<std::vector<bool>> out(b.rows(), std::vector<bool>(b.cols()));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out[i][j] = b(i, j).value;
  return out;
}

}  // namespace

TEST_CASE("single hole compiles to eps up to unitors") {
  const Signature sig = dims_sig(2, 3, 1, 1);
  CircuitSkeleton sk;
  sk.name = "one";
  sk.inputs = {{"x", B("A")}};
  sk.outputs = {{"y", B("B")}};
  sk.nodes = {{"h", {B("A")}, {B("B")}}};
  sk.wires = {W("x", {}, "h", 0), W("h", 0, "y", {})};
  const TypedTerm t = skeleton_to_term(sk, sig);
  CHECK(t.dom == arrow(B("A"), B("B")) * B("A"));
  CHECK(t.cod == B("B"));
  CHECK(count_kind(t.term, TermKind::Eps) == 1);
  const Interpretation interp(sig);
  CHECK(eval(t.term, interp) == eval(Term::eps(B("A"), B("B")), interp));
  CHECK(typecheck(t.term, sig).dom == t.dom);
  CHECK(is_comb(sk, sig));
}

TEST_CASE("two-hole comb equals direct composition") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Signature sig = dims_sig(2, 3, 2, 2);
    const auto sk = chain2();
    const TypedTerm t = skeleton_to_term(sk, sig);
    CHECK(count_kind(t.term, TermKind::Eps) == 2);
    CHECK(is_comb(sk, sig));
    const Interpretation interp(sig, Mode::Causal);
    const QMatrix f = random_matrix(6, 2, seed, 9, true, true);
    const QMatrix g = random_matrix(2, 6, seed + 100, 9, true, true);
    CHECK(fill_holes(sk, {{"h1", f}, {"h2", g}}, interp) == g * f);
  }
}

TEST_CASE("side input enters the second hole") {
  const Signature sig = dims_sig(2, 1, 3, 2);
  CircuitSkeleton sk;
  sk.name = "side";
  sk.inputs = {{"a", B("A")}, {"x", B("X")}};
  sk.outputs = {{"c", B("C")}};
  sk.nodes = {{"h1", {B("A")}, {B("M")}}, {"h2", {B("X"), B("M")}, {B("C")}}};
  sk.wires = {W("a", {}, "h1", 0), W("x", {}, "h2", 0), W("h1", 0, "h2", 1), W("h2", 0, "c", {})};
  const Interpretation interp(sig);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const QMatrix f = random_matrix(3, 2, seed, 9, false, false);
    const QMatrix g = random_matrix(2, 6, seed + 7, 9, false, false);
    const QMatrix oracle = g * kron(QMatrix::identity(2), f) * swap_formula(2, 2);
    CHECK(fill_holes(sk, {{"h1", f}, {"h2", g}}, interp) == oracle);
  }
  CHECK(is_comb(sk, sig));
}

TEST_CASE("comb filling is associative") {
  const Signature sig = dims_sig(2, 3, 2, 3);
  const Interpretation interp(sig);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const QMatrix f = random_matrix(3, 2, seed, 9, false, false);
    const QMatrix g = random_matrix(2, 3, seed + 1, 9, false, false);
    const QMatrix h = random_matrix(3, 2, seed + 2, 9, false, false);
    const QMatrix all = fill_holes(chain3(), {{"p", f}, {"q", g}, {"r", h}}, interp);
    const QMatrix left = fill_holes(chain_of(B("A"), B("M"), B("C")), {{"u", g * f}, {"v", h}}, interp);
    const QMatrix right = fill_holes(chain_of(B("A"), B("B"), B("C")), {{"u", f}, {"v", h * g}}, interp);
    CHECK(all == left);
    CHECK(all == right);
    CHECK(all == h * g * f);
  }
}

TEST_CASE("identity fills give the identity on global wires") {
  const Signature sig = dims_sig(2, 3, 1, 1);
  CircuitSkeleton sk;
  sk.name = "parallel";
  sk.inputs = {{"a", B("A")}, {"b", B("B")}};
  sk.outputs = {{"a2", B("A")}, {"b2", B("B")}};
  sk.nodes = {{"h1", {B("A")}, {B("A")}}, {"h2", {B("B")}, {B("B")}}};
  sk.wires = {W("a", {}, "h1", 0), W("b", {}, "h2", 0), W("h1", 0, "a2", {}), W("h2", 0, "b2", {})};
  const Interpretation interp(sig, Mode::Causal);
  CHECK(fill_holes(sk, {{"h1", QMatrix::identity(2)}, {"h2", QMatrix::identity(3)}}, interp) ==
        QMatrix::identity(6));
  CHECK(!is_comb(sk, sig));
  // term fills
  const std::map<std::string, Term> terms{{"h1", Term::id(B("A"))}, {"h2", Term::id(B("B"))}};
  CHECK(fill_holes(sk, terms, interp) == QMatrix::identity(6));
}

TEST_CASE("stochastic fills give stochastic channels") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    std::mt19937_64 rng(seed);
    std::size_t d[4];
    for (auto& x : d) x = 1 + rng() % 3;
    const Signature sig = dims_sig(d[0], d[1], d[2], d[3]);
    const Interpretation interp(sig, Mode::Causal);
    const QMatrix f = random_matrix(d[1] * d[2], d[0], rng(), 9, true, true);
    const QMatrix g = random_matrix(d[3], d[1] * d[2], rng(), 9, true, true);
    const QMatrix out = fill_holes(chain2(), {{"h1", f}, {"h2", g}}, interp);
    for (std::size_t j = 0; j < out.cols(); ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < out.rows(); ++i) {
        CHECK(sgn(out(i, j)) >= 0);
        s += out(i, j);
      }
      CHECK(s == 1);
    }
  }
}

TEST_CASE("compiled terms are deterministic") {
  const Signature sig = dims_sig(2, 2, 2, 2);
  CHECK(skeleton_to_term(chain3(), sig).term.str() == skeleton_to_term(chain3(), sig).term.str());
  auto shuffled = chain3();
  std::swap(shuffled.nodes[0], shuffled.nodes[2]);
  std::swap(shuffled.wires[1], shuffled.wires[3]);
  CHECK(skeleton_to_term(shuffled, sig).term.str() == skeleton_to_term(chain3(), sig).term.str());
  CHECK(validate_skeleton(shuffled, sig) == std::vector<std::string>{"p", "q", "r"});
}

TEST_CASE("invalid skeletons name the culprit") {
  const Signature sig = dims_sig(2, 3, 2, 2);
  auto bad_type = chain2();
  bad_type.wires[0] = W("a", {}, "h1", 0);
  bad_type.nodes[0].inputs = {B("B")};
  CHECK_THROWS_WITH_AS(skeleton_to_term(bad_type, sig), doctest::Contains("wire 'a -> h1.0'"), StructureError);

  auto declared = chain2();
  declared.wires[1].type = B("M");
  CHECK_THROWS_WITH_AS(skeleton_to_term(declared, sig), doctest::Contains("h1.0 -> h2.0"), StructureError);

  CircuitSkeleton cyc;
  cyc.name = "loop";
  cyc.nodes = {{"p", {B("A")}, {B("A")}}, {"q", {B("A")}, {B("A")}}};
  cyc.wires = {W("p", 0, "q", 0), W("q", 0, "p", 0)};
  CHECK_THROWS_WITH_AS(skeleton_to_term(cyc, sig), doctest::Contains("cycle through node"), StructureError);

  auto dangling = chain2();
  dangling.wires.pop_back();
  CHECK_THROWS_AS(skeleton_to_term(dangling, sig), StructureError);

  auto twice = chain2();
  twice.wires.push_back(W("a", {}, "h1", 0));
  CHECK_THROWS_AS(skeleton_to_term(twice, sig), StructureError);

  auto higher = chain2();
  higher.nodes[0].inputs = {arrow(B("A"), B("A"))};
  CHECK_THROWS_WITH_AS(skeleton_to_term(higher, sig), doctest::Contains("higher-order"), StructureError);
}

TEST_CASE("fill validation") {
  const Signature sig = dims_sig(2, 3, 2, 2);
  const Interpretation causal(sig, Mode::Causal);
  const QMatrix f = random_matrix(6, 2, 1, 9, true, true);
  const QMatrix g = random_matrix(2, 6, 2, 9, true, true);
  CHECK_THROWS_AS(fill_holes(chain2(), {{"h1", f}}, causal), AssignmentError);
  CHECK_THROWS_AS(fill_holes(chain2(), {{"h1", g}, {"h2", g}}, causal), AssignmentError);
  CHECK_THROWS_AS(fill_holes(chain2(), {{"h1", scale(Rational(2), f)}, {"h2", g}}, causal), AssignmentError);
  CHECK_THROWS_AS(fill_holes(chain2(), {{"h1", f}, {"h2", g}, {"h9", g}}, causal), AssignmentError);
  CHECK_NOTHROW(fill_holes(chain2(), {{"h1", scale(Rational(2), f)}, {"h2", g}}, Interpretation(sig)));
}

TEST_CASE("signalling analysis") {
  const Signature sig = dims_sig(2, 3, 2, 2);
  const Interpretation interp(sig, Mode::Causal);
  const QMatrix sw = eval(Term::swap(B("A"), B("B")), interp);
  const BMatrix s = signalling_analysis(sw, {B("A"), B("B")}, {B("B"), B("A")}, interp);
  CHECK(to_bools(s) == std::vector<std::vector<bool>>{{false, true}, {true, false}});
  CHECK(to_bools(s) == signalling_oracle(sw, {2, 3}, {3, 2}));

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const QMatrix f = random_matrix(2, 2, seed, 9, true, true);
    const QMatrix g = random_matrix(3, 3, seed + 50, 9, true, true);
    const QMatrix fg = kron(f, g);
    const auto got = to_bools(signalling_analysis(fg, {B("A"), B("B")}, {B("A"), B("B")}, interp));
    CHECK(got == signalling_oracle(fg, {2, 3}, {2, 3}));
    CHECK(!got[0][1]);
    CHECK(!got[1][0]);
  }

  // processes induced by causal states never signal from A to X
  for (auto [da, da2, dx] : std::vector<std::tuple<int, int, int>>{{2, 2, 2}, {2, 2, 3}, {3, 2, 2}}) {
    Signature s2;
    s2.add_base("A", da, true).add_base("B", da2, true).add_base("C", dx, true);
    const Interpretation i2(s2, Mode::Causal);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const QMatrix mix = random_product_mixture(B("A"), B("B"), B("C"), seed, i2);
      const QMatrix m = induced_process(B("A"), B("B"), B("C"), mix, i2);
      REQUIRE(is_stochastic(m));
      const auto got = to_bools(signalling_analysis(m, {B("A")}, {B("B"), B("C")}, i2));
      CHECK(!got[0][1]);
      CHECK(got == signalling_oracle(m, {std::size_t(da)}, {std::size_t(da2), std::size_t(dx)}));
    }
  }

  CHECK_THROWS_AS(signalling_analysis(sw, {B("A")}, {B("B"), B("A")}, interp), StructureError);
  CHECK_THROWS_AS(signalling_analysis(sw, {B("A"), B("B")}, {B("B"), B("A")}, Interpretation(sig)), Inapplicable);
}

TEST_CASE("dot export") {
  const Signature sig = dims_sig(2, 3, 2, 2);
  const std::string dot = skeleton_to_dot(chain2(), sig);
  CHECK(dot.find("digraph \"chain2\"") == 0);
  CHECK(dot.find("\"h1\" [shape=box, label=\"h1 : A => B * M\"]") != std::string::npos);
  CHECK(dot.find("\"h1\" -> \"h2\" [label=\"M\"]") != std::string::npos);
  CHECK(dot.find("\"h2\" -> \"c\" [label=\"C\"]") != std::string::npos);
}
