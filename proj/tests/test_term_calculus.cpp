#include <doctest.h>

#include <cstdint>
#include <numeric>

#include "hopt/constructions.hpp"
#include "hopt/errors.hpp"
#include "hopt/linalg.hpp"
#include "hopt/semantics.hpp"
#include "support.hpp"

using namespace hopt;
using hopt::testing::B;
using hopt::testing::hat_formula;

namespace {

const Obj I = Obj::unit();

Signature with_maps(std::size_t a, std::size_t b, std::size_t c) {
  Signature sig = hopt::testing::abc(a, b, c);
  sig.add_generator("f", B("A"), B("B"));
  sig.add_generator("g", B("B"), B("C"));
  sig.add_generator("h", B("C") * B("A"), B("B"));
  sig.add_generator("s", I, B("B"));
  return sig;
}

TypedTerm tc(const Term& t, const Signature& sig) { return typecheck(t, sig); }

}  // namespace

TEST_CASE("typecheck canonical constructors") {
  const Signature sig = with_maps(2, 3, 2);
  const Obj A = B("A"), Bo = B("B"), C = B("C");
  auto e = tc(Term::eps(A, Bo), sig);
  CHECK(e.dom == arrow(A, Bo) * A);
  CHECK(e.cod == Bo);
  auto s = tc(Term::seq(A, Bo, C), sig);
  CHECK(s.dom == arrow(Bo, C) * arrow(A, Bo));
  CHECK(s.cod == arrow(A, C));
  auto p = tc(Term::par(A, Bo, C, A), sig);
  CHECK(p.cod == arrow(A * C, Bo * A));
  auto d = tc(Term::delta(C, A, Bo), sig);
  CHECK(d.dom == arrow(C * A, Bo) * C);
  CHECK(d.cod == arrow(A, Bo));

  Signature sig2 = hopt::testing::abc(2, 3);
  sig2.add_generator("x", I, A);
  auto t = tc(Term::compose(Term::eps(A, Bo), Term::tensor(Term::id(arrow(A, Bo)), Term::gen("x"))), sig2);
  CHECK(t.dom == arrow(A, Bo) * I);
  CHECK(t.cod == Bo);

  CHECK_THROWS_AS(typecheck(Term::compose(Term::eps(A, Bo), Term::eps(A, Bo)), sig), TypeError);
  CHECK_THROWS_AS(typecheck(Term::gen("nope"), sig), SignatureError);
  CHECK_THROWS_AS(typecheck(Term::id(B("Q")), sig), SignatureError);
  try {
    typecheck(Term::compose(Term::eps(A, Bo), Term::eps(A, Bo)), sig);
  } catch (const TypeError& err) {
    CHECK(std::string(err.what()).find("eps(A, B) . eps(A, B)") != std::string::npos);
  }
}

TEST_CASE("discard needs a causal first-order object") {
  Signature sig;
  sig.add_base("A", 2, true).add_base("N", 2);
  CHECK_NOTHROW(typecheck(Term::discard(B("A") * B("A")), sig));
  CHECK_THROWS_AS(typecheck(Term::discard(B("N")), sig), TypeError);
  CHECK_THROWS_AS(typecheck(Term::discard(dual(B("A"))), sig), TypeError);
}

TEST_CASE("term printing") {
  const Obj A = B("A");
  const Term t = Term::compose(Term::compose(Term::id(A), Term::id(A)), Term::compose(Term::id(A), Term::id(A)));
  CHECK(t.str() == "id(A) . id(A) . (id(A) . id(A))");
  const Term u = Term::tensor(Term::gen("f"), Term::tensor(Term::gen("g"), Term::gen("h")));
  CHECK(u.str() == "f * (g * h)");
  CHECK(Term::compose(Term::gen("f"), u).str() == "f . f * (g * h)");
  CHECK(Term::tensor(Term::compose(Term::gen("f"), Term::gen("g")), Term::gen("h")).str() == "(f . g) * h");
}

TEST_CASE("hat satisfies the insertion equation") {
  for (std::size_t a : {1, 2, 3})
    for (std::size_t b : {1, 2, 3}) {
      const Signature sig = with_maps(a, b, 2);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto interp = random_interpretation(sig, seed, 9, Mode::Full);
        const TypedTerm f = tc(Term::gen("f"), sig);
        const Term lhs = chain(std::vector<Term>{Term::lunit_inv(B("A")), Term::tensor(hat(f), Term::id(B("A"))),
                                                 Term::eps(B("A"), B("B"))});
        CHECK(eval(lhs, interp) == interp.generator("f"));
        CHECK(eval(hat(f), interp) == hat_formula(interp.generator("f")));
      }
    }
}

TEST_CASE("hat of the identity is the static identity") {
  for (std::size_t a : {1, 2, 3, 4}) {
    const Signature sig = hopt::testing::abc(a, 1);
    const Interpretation interp(sig);
    CHECK(eval(hat(tc(Term::id(B("A")), sig)), interp) == eval(Term::hat_id(B("A")), interp));
  }
}

TEST_CASE("hat of a state agrees with its name") {
  const Signature sig = with_maps(2, 3, 2);
  const auto interp = random_interpretation(sig, 11);
  const TypedTerm s = tc(Term::gen("s"), sig);
  CHECK(check_eq(hat(s), name(s), interp));
  CHECK_THROWS_AS(name(tc(Term::gen("f"), sig)), TypeError);
}

TEST_CASE("stochastic example through the insertion") {
  Signature sig;
  sig.add_base("A", 2, true);
  sig.add_generator("f", B("A"), B("A"));
  Interpretation interp(sig, Mode::Causal);
  interp.set_generator("f", QMatrix{{1, 1}, {0, 0}});
  const TypedTerm f = tc(Term::gen("f"), sig);
  const Term lhs = chain(std::vector<Term>{Term::lunit_inv(B("A")), Term::tensor(hat(f), Term::id(B("A"))),
                                           Term::eps(B("A"), B("A"))});
  // direct contraction: sum over static index i of v_i * eps(., (i, a))
  const QMatrix v = hat_formula(interp.generator("f"));
  QMatrix direct(2, 2);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) direct(y, x) = v(x * 2 + y, 0);
  CHECK(eval(lhs, interp) == direct);
  CHECK(eval(lhs, interp) == interp.generator("f"));
}

TEST_CASE("curry of eps is the identity and curry of runit is eta") {
  for (std::size_t a : {1, 2, 3})
    for (std::size_t b : {1, 2, 3}) {
      const Signature sig = hopt::testing::abc(a, b);
      const Interpretation interp(sig);
      const Obj A = B("A"), Bo = B("B");
      CHECK(check_eq(curry(tc(Term::eps(A, Bo), sig)), Term::id(arrow(A, Bo)), interp));
      CHECK(check_eq(curry(tc(Term::runit(A), sig)), Term::eta(A), interp));
    }
  const Signature sig = hopt::testing::abc(2, 2);
  CHECK_THROWS_AS(curry(tc(Term::id(B("A")), sig)), TypeError);
}

TEST_CASE("curry satisfies the closed-structure equation") {
  const Signature sig = with_maps(2, 3, 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto interp = random_interpretation(sig, seed);
    const TypedTerm h = tc(Term::gen("h"), sig);
    const Term lhs = Term::compose(Term::eps(B("A"), B("B")), Term::tensor(curry(h), Term::id(B("A"))));
    CHECK(check_eq(lhs, Term::gen("h"), interp));
  }
}

TEST_CASE("curry for single-state codomain") {
  // C * A -> I through swap and discard; the curried map is the unique
  // constant into the one-dimensional (A => I) when dim A = 1.
  Signature sig = hopt::testing::abc(1, 1, 3);
  const Obj A = B("A"), C = B("C");
  const Term f = Term::compose(Term::discard(A * C), Term::swap(C, A));
  const Interpretation interp(sig, Mode::Causal);
  const QMatrix m = eval(curry(tc(f, sig)), interp);
  CHECK(m == QMatrix{{1, 1, 1}});
}

TEST_CASE("dualiser") {
  for (std::size_t a : {1, 2, 3, 4}) {
    const Signature sig = hopt::testing::abc(a, 1);
    const Interpretation interp(sig);
    const QMatrix d = eval(dualiser(B("A")), interp);
    // d_A |a> is the static form of the evaluation-at-a effect on A => I
    QMatrix oracle(a, a);
    for (std::size_t x = 0; x < a; ++x) {
      QMatrix ev(1, a);
      ev(0, x) = 1;
      const QMatrix col = hat_formula(ev);
      for (std::size_t i = 0; i < a; ++i) oracle(i, x) = col(i, 0);
    }
    CHECK(d == oracle);
    if (a == 1) CHECK(d == QMatrix{{1}});
  }
}

TEST_CASE("phi and phi_inv are mutually inverse") {
  for (std::size_t a : {1, 2})
    for (std::size_t b : {1, 2})
      for (std::size_t c : {1, 2, 3}) {
        const Signature sig = hopt::testing::abc(a, b, c);
        const Interpretation interp(sig);
        const Obj A = B("A"), Bo = B("B"), C = B("C");
        CHECK(check_eq(Term::compose(phi(C, A, Bo), phi_inv(C, A, Bo)), Term::id(arrow(C * A, Bo)), interp));
        CHECK(check_eq(Term::compose(phi_inv(C, A, Bo), phi(C, A, Bo)), Term::id(arrow(C, arrow(A, Bo))), interp));
      }
}

TEST_CASE("phi sends the curried static form to the static form") {
  const Signature sig = with_maps(2, 2, 3);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto interp = random_interpretation(sig, seed);
    const TypedTerm h = tc(Term::gen("h"), sig);
    const Term curried_state = hat(tc(curry(h), sig));
    const Term image = Term::compose(phi(B("C"), B("A"), B("B")), curried_state);
    CHECK(eval(image, interp) == hat_formula(interp.generator("h")));
  }
}

TEST_CASE("lift transposes processes onto effects") {
  for (std::size_t a : {1, 2, 3})
    for (std::size_t b : {1, 2, 3}) {
      const Signature sig = with_maps(a, b, 1);
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto interp = random_interpretation(sig, seed);
        const TypedTerm f = tc(Term::gen("f"), sig);
        const QMatrix lifted = eval(Term::compose(lift(B("A"), B("B")), hat(f)), interp);
        // brute force: the effect e on B goes to e . f on A
        const QMatrix& fm = interp.generator("f");
        QMatrix map(a, b);
        for (std::size_t e = 0; e < b; ++e) {
          QMatrix eff(1, b);
          eff(0, e) = 1;
          const QMatrix pulled = eff * fm;
          for (std::size_t x = 0; x < a; ++x) map(x, e) = pulled(0, x);
        }
        CHECK(lifted == hat_formula(map));
        CHECK(map == fm.transpose());
      }
    }
}

TEST_CASE("arrow functor") {
  Signature sig = hopt::testing::abc(2, 2, 2);
  const Obj A = B("A");
  sig.add_generator("f1", A, A).add_generator("f2", A, A).add_generator("g1", A, A).add_generator("g2", A, A);
  sig.add_generator("h", A, A);
  const Interpretation plain(sig);
  CHECK(check_eq(arrow_functor(tc(Term::id(A), sig), tc(Term::id(B("B")), sig)), Term::id(arrow(A, B("B"))), plain));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto interp = random_interpretation(sig, seed);
    const TypedTerm f1 = tc(Term::gen("f1"), sig), f2 = tc(Term::gen("f2"), sig);
    const TypedTerm g1 = tc(Term::gen("g1"), sig), g2 = tc(Term::gen("g2"), sig);
    const Term lhs = Term::compose(arrow_functor(f1, g1), arrow_functor(f2, g2));
    const Term rhs = arrow_functor(tc(Term::compose(Term::gen("f2"), Term::gen("f1")), sig),
                                   tc(Term::compose(Term::gen("g1"), Term::gen("g2")), sig));
    CHECK(check_eq(lhs, rhs, interp));

    // action on static forms: h |-> g1 . h . f1
    const QMatrix image = eval(Term::compose(arrow_functor(f1, g1), hat(tc(Term::gen("h"), sig))), interp);
    CHECK(image == hat_formula(interp.generator("g1") * interp.generator("h") * interp.generator("f1")));

    if (linalg::is_invertible(interp.generator("f1")) && linalg::is_invertible(interp.generator("g1")))
      CHECK(linalg::is_invertible(eval(arrow_functor(f1, g1), interp)));
  }
}

namespace {

// mixed-radix permutation matrix built from index arithmetic
QMatrix permutation_oracle(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
  const std::size_t n = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  QMatrix m(n, n);
  std::vector<std::size_t> digit(dims.size());
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx;
    for (std::size_t k = dims.size(); k-- > 0;) {
      digit[k] = rest % dims[k];
      rest /= dims[k];
    }
    std::size_t out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) out = out * dims[perm[i]] + digit[perm[i]];
    m(out, idx) = 1;
  }
  return m;
}

}  // namespace

TEST_CASE("structural wiring") {
  Signature sig;
  sig.add_base("P", 2).add_base("Q", 3).add_base("R", 1).add_base("S", 2);
  const Interpretation interp(sig);
  const std::vector<Obj> items{B("P"), B("Q"), B("R"), B("S")};
  const std::vector<std::size_t> dims{2, 3, 1, 2};
  std::vector<std::size_t> perm{0, 1, 2, 3};
  do {
    const Term t = permute(items, perm);
    const TypedTerm typed = typecheck(t, sig);
    CHECK(typed.dom == tensor_list(items));
    CHECK(eval(t, interp) == permutation_oracle(dims, perm));
    CHECK(check_eq(Term::compose(invert_structural(t), t), Term::id(tensor_list(items)), interp));
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (std::size_t cut = 0; cut <= items.size(); ++cut) {
    const std::span<const Obj> all(items);
    const Term c = concat(all.first(cut), all.subspan(cut));
    const TypedTerm typed = typecheck(c, sig);
    CHECK(typed.cod == tensor_list(items));
    CHECK(typed.dom == tensor_list(all.first(cut)) * tensor_list(all.subspan(cut)));
    CHECK(eval(c, interp) == QMatrix::identity(12));
    CHECK(typecheck(split(all.first(cut), all.subspan(cut)), sig).cod == typed.dom);
  }

  const Term x = interchange(B("P"), B("Q"), B("R"), B("S"));
  CHECK(typecheck(x, sig).cod == (B("P") * B("R")) * (B("Q") * B("S")));
  CHECK(eval(x, interp) == permutation_oracle(dims, {0, 2, 1, 3}));
  CHECK_THROWS_AS(invert_structural(Term::eps(B("P"), B("Q"))), TypeError);
  CHECK(tensor_list({}) == I);
}

TEST_CASE("count_kind counts uses") {
  const Term e = Term::eps(B("A"), B("B"));
  const Term t = Term::tensor(e, Term::compose(e, Term::id(arrow(B("A"), B("B")) * B("A"))));
  CHECK(count_kind(t, TermKind::Eps) == 2);
  CHECK(count_kind(t, TermKind::Id) == 1);
}
