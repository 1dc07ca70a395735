#include <doctest.h>

#include "hopt/checks.hpp"
#include "hopt/constructions.hpp"
#include "hopt/errors.hpp"
#include "hopt/linalg.hpp"
#include "support.hpp"

using namespace hopt;
using hopt::testing::abc;
using hopt::testing::B;

namespace {

const Obj I = Obj::unit();

std::vector<Obj> some_objects() {
  return {I, B("A"), B("B"), dual(B("A")), B("A") * B("B"), arrow(B("A"), B("B"))};
}

}  // namespace

TEST_CASE("insertion holds for random generators in both modes") {
  for (auto [da, db] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 2}}) {
    Signature sig = abc(da, db);
    sig.add_generator("f", B("A"), B("B")).add_generator("h", B("A") * B("B"), arrow(B("A"), B("B")));
    for (Mode mode : {Mode::Full, Mode::Causal})
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto interp = random_interpretation(sig, seed, 9, mode);
        CHECK(check_insertion("f", interp).passed());
        CHECK(check_insertion("h", interp).passed());
      }
  }
  CHECK_THROWS_AS(check_insertion("nope", Interpretation(abc(1, 1))), SignatureError);
}

TEST_CASE("complete injectivity and its rank") {
  for (std::size_t da : {1, 2, 3})
    for (std::size_t db : {1, 2})
      for (std::size_t dc : {1, 2}) {
        const Interpretation interp(abc(da, db, dc));
        const auto r = check_complete_injectivity(B("A"), B("B"), B("C"), interp);
        CHECK(r.passed());
        CHECK(r.params["rank"] == da * db * dc);
      }
  const Interpretation interp(abc(2, 2));
  CHECK(check_complete_injectivity(dual(B("A")), B("A") * B("B"), I, interp).passed());
}

TEST_CASE("seq, par and eps unit equations") {
  const Interpretation interp(abc(2, 1, 3));
  const auto objs = some_objects();
  for (const auto& a : objs)
    for (const auto& c : {B("B"), B("C")}) CHECK(check_seq_equation(a, B("A"), c, interp).passed());
  CHECK(check_par_equation(B("A"), B("C"), B("B"), B("A"), interp).passed());
  CHECK(check_par_equation(B("A"), I, dual(B("A")), B("C"), interp).passed());
  for (const auto& a : objs) CHECK(check_eps_unit_iso(a, interp).passed());
}

TEST_CASE("currying requires a tensor domain and finds the unique curry") {
  Signature sig = abc(2, 3, 2);
  sig.add_generator("h", B("C") * B("A"), B("B")).add_generator("f", B("A"), B("B"));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto interp = random_interpretation(sig, seed);
    const auto r = check_currying("h", interp);
    CHECK(r.passed());
    CHECK(check_currying("f", interp).verdict == Verdict::Inapplicable);
  }
}

TEST_CASE("composition and bifunctor laws") {
  Signature sig = abc(2, 3, 2);
  sig.add_base("D", 2, true);
  sig.add_generator("f", B("A"), B("B")).add_generator("g", B("B"), B("C")).add_generator("k", B("C"), B("D"));
  sig.add_generator("f1", B("B"), B("A")).add_generator("g1", B("B"), B("A"));
  sig.add_generator("f2", B("A"), B("B")).add_generator("g2", B("A"), B("B"));
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto interp = random_interpretation(sig, seed);
    CHECK(check_composition_laws(interp).passed());
    CHECK(check_bifunctor(interp).passed());
  }
  CHECK_THROWS_AS(check_composition_laws(Interpretation(abc(1, 1))), SignatureError);
}

TEST_CASE("canonical processes satisfy their defining equations") {
  for (std::size_t da : {1, 2})
    for (std::size_t db : {1, 2, 3}) {
      const Interpretation interp(abc(da, db, 2));
      CHECK(check_canonical_existence(B("A"), B("B"), B("C"), interp).passed());
    }
  const Interpretation interp(abc(2, 2));
  CHECK(check_canonical_existence(dual(B("A")), B("B"), I, interp).passed());
}

TEST_CASE("causal check") {
  const Signature sig = abc(3, 1);
  const auto full = check_causal(B("A"), Interpretation(sig));
  CHECK(full.verdict == Verdict::Fail);
  const auto effects = full.witness["effects"];
  REQUIRE(effects.size() == 2);
  CHECK(matrix_from_json(effects[0]) != matrix_from_json(effects[1]));

  const auto unit_full = check_causal(I, Interpretation(sig));
  CHECK(unit_full.verdict == Verdict::Fail);

  const Interpretation causal(sig, Mode::Causal);
  const auto r = check_causal(B("A"), causal);
  CHECK(r.passed());
  CHECK(matrix_from_json(r.witness["discard"]) == QMatrix::row({1, 1, 1}));
  const auto u = check_causal(I, causal);
  CHECK(u.passed());
  CHECK(!u.note.empty());
  CHECK(check_causal(dual(B("A")), causal).verdict == Verdict::Inapplicable);

  Signature mixed = abc(2, 2);
  mixed.add_base("N", 2, false);
  CHECK(check_causal(B("N"), Interpretation(mixed, Mode::Causal)).verdict == Verdict::Fail);
}

TEST_CASE("enough states and effects") {
  const Signature sig = abc(2, 3);
  const Interpretation full(sig);
  for (const auto& o : some_objects()) {
    CHECK(check_enough_states(o, full).passed());
    CHECK(check_enough_effects(o, full).passed());
  }
  const Interpretation causal(sig, Mode::Causal);
  CHECK(check_enough_states(B("A"), causal).passed());
  CHECK(check_enough_states(B("A") * B("B"), causal).passed());

  // causal states of A => I are just the discard vector
  const auto s = check_enough_states(dual(B("B")), causal);
  REQUIRE(s.verdict == Verdict::Fail);
  const QMatrix y = matrix_from_json(s.witness["separating_covector"]);
  CHECK(!y.is_zero());
  CHECK((y * QMatrix::column({1, 1, 1})).is_zero());

  const auto e = check_enough_effects(B("B"), causal);
  REQUIRE(e.verdict == Verdict::Fail);
  const QMatrix v = matrix_from_json(e.witness["indistinguishable_direction"]);
  CHECK(!v.is_zero());
  CHECK((QMatrix::row({1, 1, 1}) * v).is_zero());
}
