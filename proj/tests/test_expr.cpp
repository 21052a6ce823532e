#include <doctest.h>

#include "sfi/parser.hpp"
#include "test_util.hpp"

using namespace sfi;
using sfi::testing::PolyGen;
using sfi::testing::R;

static Expr N(const std::string& s) { return normalize(parse_expr(s)); }

TEST_CASE("print/parse round trip on canonical forms") {
  for (const char* s : {
           "x",
           "-x",
           "0",
           "1/2",
           "-1/2",
           "x + y",
           "x - y",
           "2*x^2*y - z + 1/2",
           "-x^3 + 3*x*y*z - 1",
           "(x^2*y - y*z)/(x^2*z + y^2)",
           "(x)/(y)",
           "-1/2*x*z",
           "exp(x)",
           "2*x*exp(x^2)",
           "ln((x + 1)/(y))",
           "arctan(x)",
           "integral(exp(x), x)",
           "exp(x)^2",
       }) {
    Expr e = parse_expr(s);
    CHECK(expr_str(e) == s);
    CHECK(expr_equal(parse_expr(expr_str(e)), e));
  }
}

TEST_CASE("normalization folds field arithmetic") {
  CHECK(expr_str(N("x*(y + z) - x*y - x*z")) == "0");
  CHECK(expr_str(N("(x^2 - y^2)/(x - y)")) == "x + y");
  CHECK(expr_str(N("1/x + 1/y")) == "(x + y)/(x*y)");
  CHECK(expr_str(N("(x + y)^2 - x^2 - 2*x*y - y^2")) == "0");
  CHECK(expr_str(N("x^-2")) == "(1)/(x^2)");
  CHECK(expr_str(N("exp(0) + ln(1) + arctan(0)")) == "1");
  // identical applications collapse to one atom
  CHECK(expr_str(N("exp(x + x) - exp(2*x)")) == "0");
}

TEST_CASE("differentiation with chain rules") {
  SymId x = sym("x"), y = sym("y");
  CHECK(expr_str(differentiate(N("x^2*y"), x)) == "2*x*y");
  CHECK(expr_str(differentiate(N("x/y"), y)) == "(-x)/(y^2)");
  CHECK(expr_str(differentiate(N("exp(x^2)"), x)) == "2*x*exp(x^2)");
  CHECK(expr_str(differentiate(N("ln(x^2 + 1)"), x)) == "(2*x)/(x^2 + 1)");
  CHECK(expr_str(differentiate(N("arctan(y/x)"), y)) == "(x)/(x^2 + y^2)");
  CHECK(expr_str(differentiate(N("exp(ln(x))"), x)) == "(exp(ln(x)))/(x)");
}

TEST_CASE("integral atoms differentiate under the sign") {
  SymId x = sym("x"), y = sym("y");
  Expr body = N("x*y");
  Expr I = e_fun(FunKind::Integral, {body, e_sym(x)});
  CHECK(expr_str(differentiate(I, x)) == "x*y");
  CHECK(expr_str(differentiate(I, y)) == "integral(x, x)");
  CHECK(expr_str(differentiate(I, sym("z"))) == "0");
}

TEST_CASE("exact evaluation") {
  SymId x = sym("x"), y = sym("y");
  std::map<SymId, Rational> pt{{x, rat(2)}, {y, rat(3)}};
  CHECK(eval_rational(N("(x + y)/(x - y)"), pt) == rat(-5));
  std::map<SymId, Rational> pole{{x, rat(1)}, {y, rat(1)}};
  CHECK_THROWS_AS(eval_rational(N("(x + y)/(x - y)"), pole), PoleError);
  CHECK_THROWS_AS(eval_rational(N("exp(x)"), pt), NonRationalError);
}

TEST_CASE("numeric evaluation handles function nodes") {
  SymId x = sym("x");
  std::map<SymId, double> pt{{x, 0.5}};
  CHECK(eval_double(N("exp(x)*exp(-x)"), pt) == doctest::Approx(1.0));
  CHECK(eval_double(N("ln(exp(x))"), pt) == doctest::Approx(0.5));
}

TEST_CASE("collect_coefficients") {
  SymId x = sym("x"), y = sym("y"), z = sym("z");
  sym("s");
  sym("b");
  auto m = collect_coefficients(N("(s + 1)*x^2*y + b*z - 7"), {x, y, z});
  REQUIRE(m.size() == 3);
  CHECK(expr_str(m.at({{2, 1, 0}})) == "s + 1");
  CHECK(expr_str(m.at({{0, 0, 1}})) == "b");
  CHECK(expr_str(m.at({{0, 0, 0}})) == "-7");
  CHECK_THROWS_AS(collect_coefficients(N("x/y"), {x, y, z}),
                  std::invalid_argument);
  CHECK_THROWS_AS(collect_coefficients(N("exp(x)"), {x, y, z}),
                  NonRationalError);
  // coefficients may be rational in non-collected symbols
  auto m2 = collect_coefficients(N("x/s"), {x, y, z});
  CHECK(expr_str(m2.at({{1, 0, 0}})) == "(1)/(s)");
}

TEST_CASE("round trip through ratfun is stable (randomized)") {
  SymId x = sym("x"), y = sym("y"), z = sym("z");
  PolyGen gen(987654, {x, y, z});
  for (int i = 0; i < 60; ++i) {
    RatFun r(gen.poly(4, 3), gen.nonzero_poly(3, 2));
    Expr e = from_ratfun(r);
    Expr back = parse_expr(expr_str(e));
    CHECK(expr_equal(back, e));
    CHECK(to_ratfun(back) == r);
  }
}
