#include <doctest.h>

#include "sfi/ratfunc.hpp"
#include "test_util.hpp"

using namespace sfi;
using sfi::testing::P;
using sfi::testing::R;

TEST_CASE("canonical reduced form") {
  RatFun r(P("x^2 - y^2"), P("x - y"));
  CHECK(r.is_polynomial());
  CHECK(r.num() == P("x + y"));

  RatFun s(P("x"), P("-2*y"));
  CHECK(s.den() == P("y"));  // denominator primitive, positive leading coeff
  CHECK(s.num() == P("-1/2*x"));

  CHECK(RatFun(P("0"), P("x + y")) == RatFun());
  CHECK_THROWS_AS(RatFun(P("x"), P("0")), PoleError);
}

TEST_CASE("field operations") {
  RatFun a = R("x/y");
  RatFun b = R("y/x");
  CHECK(a * b == RatFun(1));
  CHECK(a + b == R("(x^2 + y^2)/(x*y)"));
  CHECK(a / b == R("x^2/y^2"));
  CHECK(a - a == RatFun());
  CHECK(a.pow(-2) == R("y^2/x^2"));
  CHECK(R("(x + y)/(x - y)") + R("(x + y)/(y - x)") == RatFun());
}

TEST_CASE("derivative via quotient rule") {
  SymId x = sym("x"), y = sym("y");
  CHECK(R("x^2/y").derivative(x) == R("2*x/y"));
  CHECK(R("x/y").derivative(y) == R("-x/y^2"));
  CHECK(R("(x + y)/(x - y)").derivative(x) == R("-2*y/(x - y)^2"));
}

TEST_CASE("substitution and evaluation") {
  SymId x = sym("x"), y = sym("y");
  CHECK(R("y/x").subst(x, R("(1 + y)/y")) == R("y^2/(1 + y)"));
  CHECK(R("(x + 1)/(x - 1)").subst(x, RatFun(3)) == RatFun(2));
  std::map<SymId, Rational> pt{{x, rat(3)}, {y, rat(1)}};
  CHECK(R("(x + y)/(x - y)").eval(pt) == rat(2));
  std::map<SymId, Rational> pole{{x, rat(1)}, {y, rat(1)}};
  CHECK_THROWS_AS(R("(x + y)/(x - y)").eval(pole), PoleError);
  CHECK_THROWS_AS(R("1/x").subst(x, RatFun()), PoleError);
}

TEST_CASE("poly_subst mixes symbolic and substituted variables") {
  SymId x = sym("x"), y = sym("y"), z = sym("z");
  std::map<SymId, RatFun> m{{x, R("1/z")}};
  CHECK(poly_subst(P("x^2*y + z"), m) == R("(y + z^3)/(z^2)"));
}
