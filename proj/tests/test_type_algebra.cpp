#include <doctest.h>

#include "hopt/errors.hpp"
#include "hopt/types.hpp"
#include "support.hpp"

using namespace hopt;
using hopt::testing::B;

namespace {

// number of basis pairs, counted by enumeration rather than the product rule
std::size_t enumerate_basis(const Obj& o, const Signature& sig) {
  switch (o.kind()) {
    case ObjKind::Unit:
      return 1;
    case ObjKind::Base:
      return sig.find_base(o.name())->dim;
    default: {
      std::size_t n = 0;
      const std::size_t l = enumerate_basis(o.left(), sig);
      const std::size_t r = enumerate_basis(o.right(), sig);
      for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < r; ++j) ++n;
      return n;
    }
  }
}

}  // namespace

TEST_CASE("is_first_order") {
  const Signature sig = hopt::testing::abc(2, 3);
  CHECK(is_first_order(B("A") * B("B"), sig));
  CHECK_FALSE(is_first_order(arrow(B("A"), B("A")), sig));
  CHECK_FALSE(is_first_order(B("A") * arrow(Obj::unit(), B("B")), sig));
  CHECK(is_first_order(Obj::unit(), sig));
  CHECK_THROWS_AS(is_first_order(B("Z"), sig), SignatureError);
}

TEST_CASE("dimension") {
  const Signature sig = hopt::testing::abc(2, 3);
  CHECK(dimension(Obj::unit(), sig) == 1);
  CHECK(dimension(arrow(B("A"), B("B")), sig) == 6);
  CHECK(dimension(arrow(arrow(B("A"), B("A")), Obj::unit()), sig) == 4);
  CHECK(dimension(double_dual(B("B")), sig) == 3);
  CHECK_THROWS_AS(dimension(B("Q"), sig), SignatureError);

  const std::vector<Obj> samples{B("A"), B("A") * B("B"), arrow(B("B"), B("A") * B("C")),
                                 double_dual(B("A") * B("B")), arrow(arrow(B("A"), B("B")), B("B"))};
  for (const auto& o : samples) {
    CHECK(dimension(o, sig) == enumerate_basis(o, sig));
    CHECK(dimension(dual(o), sig) == dimension(o, sig));
    CHECK(dimension(double_dual(o), sig) == dimension(o, sig));
  }
}

TEST_CASE("dual and double dual unfold") {
  CHECK(dual(B("A")) == Obj::arrow(B("A"), Obj::unit()));
  CHECK(double_dual(Obj::unit()) == Obj::arrow(Obj::arrow(Obj::unit(), Obj::unit()), Obj::unit()));
}

TEST_CASE("strict syntactic equality") {
  CHECK(Obj::unit() * B("A") != B("A"));
  CHECK((B("A") * B("B")) * B("C") != B("A") * (B("B") * B("C")));
  CHECK(B("A") * B("B") == B("A") * B("B"));
}

TEST_CASE("printing") {
  CHECK((B("A") * B("B")).str() == "A * B");
  CHECK((B("A") * (B("B") * B("C"))).str() == "A * (B * C)");
  CHECK(arrow(B("A"), arrow(B("B"), B("C"))).str() == "A => B => C");
  CHECK(arrow(arrow(B("A"), B("B")), B("C")).str() == "(A => B) => C");
  CHECK((arrow(B("A"), B("B")) * B("A")).str() == "(A => B) * A");
  CHECK(arrow(B("A") * B("B"), Obj::unit()).str() == "A * B => I");
}

TEST_CASE("signature validation") {
  Signature sig;
  sig.add_base("A", 2);
  CHECK_THROWS_AS(sig.add_base("A", 3), SignatureError);
  CHECK_THROWS_AS(sig.add_base("Z", 0), SignatureError);
  sig.add_generator("f", B("A"), B("A"));
  CHECK_THROWS_AS(sig.add_generator("f", B("A"), B("A")), SignatureError);
  CHECK_THROWS_AS(sig.add_generator("g", B("A"), B("Q")), SignatureError);
  CHECK_THROWS_AS(sig.add_base("f", 2), SignatureError);
  CHECK(sig.find_base("A")->dim == 2);
  CHECK(sig.find_generator("f") != nullptr);
  CHECK(sig.find_generator("g") == nullptr);
}

TEST_CASE("causal first-order objects") {
  Signature sig;
  sig.add_base("A", 2, true).add_base("N", 2, false);
  CHECK(is_causal_first_order(B("A") * B("A"), sig));
  CHECK(is_causal_first_order(Obj::unit(), sig));
  CHECK_FALSE(is_causal_first_order(B("A") * B("N"), sig));
  CHECK_FALSE(is_causal_first_order(dual(B("A")), sig));
}
