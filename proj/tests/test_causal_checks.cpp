#include <doctest.h>

#include <numeric>

#include "hopt/causal_model.hpp"
#include "hopt/checks.hpp"
#include "hopt/constructions.hpp"
#include "hopt/errors.hpp"
#include "hopt/linalg.hpp"
#include "support.hpp"

using namespace hopt;
using hopt::testing::abc;
using hopt::testing::B;
using hopt::testing::hat_formula;

namespace {

const Obj I = Obj::unit();

// All deterministic functions n -> m as 0/1 matrices.
std::vector<QMatrix> functions(std::size_t n, std::size_t m) {
  std::vector<QMatrix> out;
  std::vector<std::size_t> img(n, 0);
  while (true) {
    QMatrix f(m, n);
    for (std::size_t i = 0; i < n; ++i) f(img[i], i) = 1;
    out.push_back(f);
    std::size_t k = 0;
    while (k < n && ++img[k] == m) img[k++] = 0;
    if (k == n) break;
  }
  return out;
}

// Independent par matrix for (A => A') * (B => B') -> (A * B) => (A' * B').
QMatrix par_formula(std::size_t a, std::size_t a2, std::size_t b, std::size_t b2) {
  QMatrix m(a * b * a2 * b2, a * a2 * b * b2);
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t x2 = 0; x2 < a2; ++x2)
      for (std::size_t y = 0; y < b; ++y)
        for (std::size_t y2 = 0; y2 < b2; ++y2)
          m((x * b + y) * (a2 * b2) + (x2 * b2 + y2), (x * a2 + x2) * (b * b2) + (y * b2 + y2)) = 1;
  return m;
}

// marginal[x, a] = sum_{a'} state[(a * dA' + a') * dX + x]
QMatrix marginal_formula(const QMatrix& state, std::size_t da, std::size_t da2, std::size_t dx) {
  QMatrix m(dx, da);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t a2 = 0; a2 < da2; ++a2)
      for (std::size_t x = 0; x < dx; ++x) m(x, a) += state((a * da2 + a2) * dx + x, 0);
  return m;
}

}  // namespace

TEST_CASE("causal state spaces") {
  const Interpretation interp(abc(2, 3), Mode::Causal);
  CausalModel model(interp);
  CHECK(model.states(I).is_point());
  CHECK(model.states(B("A")).affine_dim() == 1);
  CHECK(model.states(B("A") * B("B")).affine_dim() == 5);
  // channels A -> B: columns summing to one
  const AffineSpace& h = model.states(arrow(B("A"), B("B")));
  CHECK(h.affine_dim() == 4);
  for (const auto& f : functions(2, 3)) CHECK(h.contains(hat_formula(f)));
  CHECK(!h.contains(hat_formula(QMatrix(3, 2))));
  // effects of A => I are states of A
  CHECK(model.effects(dual(B("A"))).affine_dim() == 1);
  CHECK(model.effects(B("B")).is_point());
  CHECK(model.effects(B("B")).point == QMatrix::column({1, 1, 1}));

  const Interpretation full(abc(2, 3));
  CausalModel fm(full);
  CHECK(fm.states(arrow(B("A"), B("B"))).affine_dim() == 6);
  CHECK(fm.effects(I).affine_dim() == 1);

  Signature mixed = abc(2, 2);
  mixed.add_base("N", 2, false);
  const Interpretation bad(mixed, Mode::Causal);
  CausalModel bm(bad);
  CHECK_THROWS_AS(bm.states(B("N") * B("A")), Inapplicable);
}

TEST_CASE("induced process and non-signalling of product mixtures") {
  for (auto [da, da2, dx] : std::vector<std::tuple<int, int, int>>{{2, 2, 2}, {2, 3, 2}, {3, 2, 1}}) {
    const Interpretation interp(abc(da, da2, dx), Mode::Causal);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const QMatrix s = random_product_mixture(B("A"), B("B"), B("C"), seed, interp);
      const QMatrix m = induced_process(B("A"), B("B"), B("C"), s, interp);
      // m[(a', x), a] read off the state directly
      for (int a = 0; a < da; ++a)
        for (int a2 = 0; a2 < da2; ++a2)
          for (int x = 0; x < dx; ++x) CHECK(m(a2 * dx + x, a) == s((a * da2 + a2) * dx + x, 0));
      const auto r = check_non_signalling(B("A"), B("B"), B("C"), s, interp);
      REQUIRE(r.passed());
      const QMatrix marg = marginal_formula(s, da, da2, dx);
      CHECK(matrix_from_json(r.witness["marginal"]) == marg.col(0));
    }
  }
}

TEST_CASE("swap state signals") {
  const Interpretation interp(abc(2, 3), Mode::Causal);
  const Obj x = arrow(B("B"), B("A"));
  const QMatrix s = swap_state(2, 3);
  const auto r = check_non_signalling(B("A"), B("B"), x, s, interp);
  REQUIRE(r.verdict == Verdict::Fail);
  const QMatrix marg = marginal_formula(s, 2, 3, 6);
  CHECK(marg.col(0) != marg.col(1));
  CHECK(matrix_from_json(r.witness["marginal_0"]) == marg.col(0));

  // not normalized means inapplicable
  CHECK(check_non_signalling(B("A"), B("B"), x, scale(Rational(2), s), interp).verdict == Verdict::Inapplicable);
  // full mode: A is not causal
  CHECK(check_non_signalling(B("A"), B("B"), x, s, Interpretation(abc(2, 3))).verdict == Verdict::Inapplicable);
}

TEST_CASE("swap is not reachable from the tensor of channel spaces") {
  for (auto [da, db] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 2}}) {
    const Interpretation interp(abc(da, db), Mode::Causal);
    const auto r = check_tensor_vs_bipartite(B("A"), B("B"), interp);
    REQUIRE(r.passed());
    const QMatrix y = matrix_from_json(r.witness["certificate"]);
    const QMatrix t = matrix_from_json(r.witness["target"]);
    const QMatrix m = par_formula(da, db, db, da);
    CHECK(t == hat_formula(canonical::swap<Rational>(da, db)));
    // y separates: every product of deterministic channels scores y.t - 1
    const Rational yt = (y * t)(0, 0);
    for (const auto& f1 : functions(da, db))
      for (const auto& f2 : functions(db, da))
        CHECK((y * m * kron(hat_formula(f1), hat_formula(f2)))(0, 0) == yt - 1);
  }
}

TEST_CASE("product channels are reachable") {
  const Interpretation interp(abc(2, 3), Mode::Causal);
  const QMatrix c1 = random_matrix(3, 2, 5, 9, true, true);
  const QMatrix c2 = random_matrix(2, 3, 6, 9, true, true);
  const auto r = check_tensor_vs_bipartite(B("A"), B("B"), interp, kron(c1, c2));
  REQUIRE(r.verdict == Verdict::Fail);
  const QMatrix pre = matrix_from_json(r.witness["preimage"]);
  CHECK(par_formula(2, 3, 3, 2) * pre == hat_formula(kron(c1, c2)));

  // cyclic shift on six points
  QMatrix shift(6, 6);
  for (std::size_t i = 0; i < 6; ++i) shift((i + 1) % 6, i) = 1;
  CHECK(check_tensor_vs_bipartite(B("A"), B("B"), interp, shift).passed());

  CHECK(check_tensor_vs_bipartite(B("A"), B("C"), interp).verdict == Verdict::Inapplicable);
  CHECK(check_tensor_vs_bipartite(B("A"), B("B"), interp, QMatrix(6, 6)).verdict == Verdict::Inapplicable);
}

TEST_CASE("no correlation with a single-state system") {
  const Interpretation interp(abc(2, 3), Mode::Causal);
  const Obj y = dual(B("A"));
  std::vector<QMatrix> states;
  for (std::uint64_t seed = 0; seed < 8; ++seed)
    states.push_back(kron(random_matrix(3, 1, seed, 9, true, true), QMatrix::column({1, 1})));
  CHECK(check_no_correlation_single_state(y, B("B"), states, interp).passed());
  CHECK(check_no_correlation_single_state(I, B("B"), {QMatrix::column({1, 2, 3})}, interp).passed());

  states.push_back(hopt::testing::basis_column(6, 0));
  const auto r = check_no_correlation_single_state(y, B("B"), states, interp);
  REQUIRE(r.verdict == Verdict::Fail);
  CHECK(r.witness["state_index"] == 8);
  CHECK(!matrix_from_json(r.witness["residual"]).is_zero());

  CHECK(check_no_correlation_single_state(B("A"), B("B"), states, interp).verdict == Verdict::Inapplicable);
}

TEST_CASE("double dual equivalence and lifting") {
  for (Mode mode : {Mode::Full, Mode::Causal})
    for (auto [da, db] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {2, 3}, {3, 2}}) {
      const Interpretation interp(abc(da, db), mode);
      const Obj a = B("A"), b = B("B");
      CHECK(check_adjoint_dynamics(a, b, interp).passed());
      CHECK(check_double_dual(a, interp).passed());
      CHECK(check_double_dual(dual(b), interp).passed());
      const auto eq = check_double_dual_equivalence({I, a, b, dual(a), dual(b)}, interp);
      CHECK(eq.passed());
      CHECK(eq.params["all_double_dual"] == true);
      CHECK(check_double_dual_lifting(a, b, interp).passed());
      CHECK(check_right_inverse(b, interp).passed());
      CHECK(check_right_inverse(dual(a), interp).passed());
    }
}

TEST_CASE("spanning causal effects match the pairwise formula") {
  for (auto [da, da2] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 2}}) {
    const Interpretation interp(abc(da, da2), Mode::Causal);
    const auto effects = spanning_causal_effects(B("A"), B("B"), interp);
    REQUIRE(effects.size() == da * da);
    std::size_t k = 0;
    for (std::size_t p = 0; p < da; ++p)
      for (std::size_t q = 0; q < da; ++q, ++k) {
        QMatrix expect(1, da * da2);
        for (std::size_t a = 0; a < da; ++a)
          for (std::size_t a2 = 0; a2 < da2; ++a2)
            expect(0, a * da2 + a2) = Rational((a == p ? 1 : 0) + (a == q ? 1 : 0)) / 2;
        CHECK(effects[k] == expect);
      }
  }
}

TEST_CASE("no-signalling states") {
  const Interpretation interp(abc(2, 3, 2), Mode::Causal);
  std::vector<QMatrix> states;
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    states.push_back(random_product_mixture(B("A"), B("B"), B("C"), seed, interp));
  const auto r = check_no_signalling_states(B("A"), B("B"), B("C"), states, interp);
  REQUIRE(r.passed());
  REQUIRE(r.witness["marginals"].size() == 10);
  for (std::size_t i = 0; i < states.size(); ++i)
    CHECK(matrix_from_json(r.witness["marginals"][i]) == marginal_formula(states[i], 2, 3, 2).col(0));

  const auto bad = check_no_signalling_states(B("A"), B("B"), arrow(B("B"), B("A")), {swap_state(2, 3)}, interp);
  CHECK(bad.verdict == Verdict::Fail);
}

TEST_CASE("causal and trivial") {
  const auto full = check_trivial_if_causal(Interpretation(abc(2, 2)));
  CHECK(full.passed());
  CHECK(full.params["fully_causal"] == false);
  CHECK(full.witness["object"] == "A");

  const auto causal = check_trivial_if_causal(Interpretation(abc(2, 2), Mode::Causal));
  CHECK(causal.passed());
  CHECK(causal.params["fully_causal"] == false);
  CHECK(!causal.note.empty());

  const auto ones = check_trivial_if_causal(Interpretation(abc(1, 1), Mode::Causal));
  CHECK(ones.passed());
  CHECK(ones.params["fully_causal"] == true);
  CHECK(ones.params["fully_trivial"] == true);
}

TEST_CASE("product mixtures are causal states") {
  const Interpretation interp(abc(2, 3, 2), Mode::Causal);
  CausalModel model(interp);
  const AffineSpace& s = model.states(arrow(B("A"), B("B")) * B("C"));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const QMatrix v = random_product_mixture(B("A"), B("B"), B("C"), seed, interp);
    CHECK(s.contains(v));
    for (std::size_t i = 0; i < v.rows(); ++i) CHECK(sgn(v(i, 0)) >= 0);
  }
  CHECK(random_product_mixture(B("A"), B("B"), B("C"), 4, interp) ==
        random_product_mixture(B("A"), B("B"), B("C"), 4, interp));
}
