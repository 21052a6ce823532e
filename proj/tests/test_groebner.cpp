#include <doctest.h>

#include "sfi/groebner.hpp"
#include "test_util.hpp"

using namespace sfi;
using sfi::testing::P;

TEST_CASE("grevlex order") {
  MonoOrder ord{{sym("x"), sym("y"), sym("z")}};
  CHECK(ord.cmp(P("x^2*y").leading().mono, P("x*y*z").leading().mono) > 0);
  CHECK(ord.cmp(P("x").leading().mono, P("y").leading().mono) > 0);
  CHECK(ord.cmp(P("y*z").leading().mono, P("x^2").leading().mono) < 0);
  CHECK(leading_term(P("x*y^2 + x^2*z"), ord).mono ==
        P("x*y^2").leading().mono);
}

TEST_CASE("normal form reduction") {
  MonoOrder ord{{sym("x"), sym("y"), sym("z")}};
  std::vector<Polynomial> basis{P("x^2 - z")};
  CHECK(gb_reduce(P("x^2*y"), basis, ord) == P("y*z"));
  CHECK(gb_reduce(P("x^4"), basis, ord) == P("z^2"));
  CHECK(gb_reduce(P("y + z"), basis, ord) == P("y + z"));
}

TEST_CASE("buchberger closes the ideal") {
  MonoOrder ord{{sym("x"), sym("y"), sym("z")}};
  auto gb = buchberger({P("x^2 - y"), P("x^3 - z")}, ord);
  REQUIRE(gb.has_value());
  // x*(x^2 - y) - (x^3 - z) = -x*y + z is in the ideal.
  CHECK(gb_reduce(P("x*y - z"), *gb, ord).is_zero());
  CHECK(gb_reduce(P("x^2 - y"), *gb, ord).is_zero());
  CHECK(!gb_reduce(P("x - 1"), *gb, ord).is_zero());
}

TEST_CASE("constraint canonicalization") {
  SymId s = sym("s"), r = sym("r"), b = sym("b");
  std::vector<SymId> params{s, r, b};

  auto c = canonicalize_constraints({P("2*s - 1"), P("r"), P("b - 1")},
                                    params);
  CHECK(!c.inconsistent);
  REQUIRE(c.rendered.size() == 3);
  CHECK(c.rendered[0] == "b = 1");
  CHECK(c.rendered[1] == "r = 0");
  CHECK(c.rendered[2] == "s = 1/2");

  auto empty = canonicalize_constraints({}, params);
  CHECK(empty.rendered.empty());
  CHECK(!empty.inconsistent);

  auto bad = canonicalize_constraints({P("s"), P("s - 1")}, params);
  CHECK(bad.inconsistent);
  REQUIRE(bad.rendered.size() == 1);
  CHECK(bad.rendered[0] == "inconsistent constraints");

  auto tie = canonicalize_constraints({P("r - s")}, params);
  REQUIRE(tie.rendered.size() == 1);
  CHECK(tie.rendered[0] == "r = s");

  auto quad = canonicalize_constraints({P("s^2 - 2")}, params);
  REQUIRE(quad.rendered.size() == 1);
  CHECK(quad.rendered[0] == "s^2 - 2 = 0");

  // Redundant generators collapse to the same canonical form.
  auto dup = canonicalize_constraints(
      {P("2*s - 1"), P("4*s - 2"), P("r"), P("r + 2*s - 1"), P("b - 1")},
      params);
  CHECK(dup.rendered == c.rendered);
}
