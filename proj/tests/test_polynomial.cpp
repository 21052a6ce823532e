#include <doctest.h>

#include "sfi/poly_gcd.hpp"
#include "sfi/polynomial.hpp"
#include "test_util.hpp"

using namespace sfi;
using sfi::testing::P;
using sfi::testing::PolyGen;

TEST_CASE("graded lex order, x > y > z") {
  SymId x = sym("x"), y = sym("y");
  Monomial x2(x, 2), xy = Monomial(x) * Monomial(y), y2(y, 2);
  CHECK(mono_cmp(x2, xy) > 0);
  CHECK(mono_cmp(xy, y2) > 0);
  CHECK(mono_cmp(y2, Monomial(x)) > 0);  // degree dominates
  CHECK(mono_cmp(Monomial(x), Monomial(y)) > 0);
  CHECK(mono_cmp(x2, x2) == 0);
  CHECK(P("x^2 + y^2").leading().mono == x2);
}

TEST_CASE("arithmetic and canonical zero") {
  CHECK(P("(x + y)*(x - y)") == P("x^2 - y^2"));
  CHECK((P("x*(y + z)") - P("x*y") - P("x*z")).is_zero());
  CHECK(P("(x + y + z)^3").term_count() == 10);
  CHECK(P("x - x").is_zero());
  CHECK((-P("x - y")) == P("y - x"));
}

TEST_CASE("derivative, substitution, evaluation") {
  SymId x = sym("x"), y = sym("y"), z = sym("z");
  CHECK(P("x^3*y + 2*x*z").derivative(x) == P("3*x^2*y + 2*z"));
  CHECK(P("x^3*y + 2*x*z").derivative(y) == P("x^3"));
  CHECK(P("y^2").derivative(x).is_zero());
  CHECK(P("x^2 + x").subst_poly(x, P("y + 1")) == P("y^2 + 3*y + 2"));
  CHECK(P("x^2*z").subst_rat(x, rat(-2)) == P("4*z"));
  std::map<SymId, Rational> pt{{x, rat(2)}, {y, rat(-1)}, {z, rat(1, 2)}};
  CHECK(P("x^2*y + z").eval(pt) == rat(-7, 2));
}

TEST_CASE("coefficient extraction") {
  SymId x = sym("x"), y = sym("y"), z = sym("z");
  auto cs = P("x^2*y - x^2*z^2 + 3*x - 7").coeffs_in(x);
  REQUIRE(cs.size() == 3);
  CHECK(cs[0] == P("-7"));
  CHECK(cs[1] == P("3"));
  CHECK(cs[2] == P("y - z^2"));

  auto m = P("2*x^2*y*z + x^2*y - z").collect({x, y});
  Monomial x2y = Monomial(x, 2) * Monomial(y);
  REQUIRE(m.count(x2y));
  CHECK(m.at(x2y) == P("2*z + 1"));
  REQUIRE(m.count(Monomial()));
  CHECK(m.at(Monomial()) == P("-z"));
}

TEST_CASE("content and normalization") {
  CHECK(P("4*x^2 + 6*y").rational_content() == rat(2));
  CHECK(P("x/2 + y/3").rational_content() == rat(1, 6));
  CHECK(P("-2*x - 4").primitive_normalized() == P("x + 2"));
  CHECK(P("x^2*y + x*y").monomial_content().degree_in(sym("x")) == 1);
}

TEST_CASE("exact division") {
  Polynomial q;
  CHECK(try_divide(P("x^2 - y^2"), P("x - y"), q));
  CHECK(q == P("x + y"));
  CHECK(!try_divide(P("x^2 + y"), P("x - y"), q));
  CHECK(exact_divide(P("6*x^3*y^2"), P("2*x*y")) == P("3*x^2*y"));
}

TEST_CASE("multivariate gcd") {
  CHECK(poly_gcd(P("x^2 - y^2"), P("x^2 + 2*x*y + y^2")) == P("x + y"));
  CHECK(poly_gcd(P("x^2 + 1"), P("y^2 + 1")) == P("1"));
  CHECK(poly_gcd(P("x^3 - 1"), P("x^2 - 1")) == P("x - 1"));
  CHECK(poly_gcd(P("2*x*y"), P("4*x^2*y")) == P("x*y"));
  CHECK(poly_gcd(P("0"), P("-3*x - 6")) == P("x + 2"));
  Polynomial a = P("(x + y)*(x^2 + z)*(x - 1)");
  Polynomial b = P("(x + y)*(x^2 + z)*(y + 1)");
  CHECK(poly_gcd(a, b) == P("(x + y)*(x^2 + z)"));
}

TEST_CASE("gcd divides both operands (randomized)") {
  SymId x = sym("x"), y = sym("y"), z = sym("z");
  PolyGen gen(20240811, {x, y, z});
  for (int i = 0; i < 40; ++i) {
    Polynomial c = gen.nonzero_poly(3, 2);
    Polynomial a = c * gen.nonzero_poly(3, 2);
    Polynomial b = c * gen.nonzero_poly(3, 2);
    Polynomial g = poly_gcd(a, b);
    Polynomial q;
    CHECK(try_divide(a, g, q));
    CHECK(try_divide(b, g, q));
    CHECK(try_divide(g, c.primitive_normalized(), q));
  }
}
