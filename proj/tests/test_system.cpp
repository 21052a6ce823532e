#include <doctest.h>

#include "sfi/system.hpp"
#include "test_util.hpp"

using namespace sfi;
using sfi::testing::P;
using sfi::testing::R;

static const char* kLorenz = R"json({
  "vars": ["x", "y", "z"],
  "params": ["s", "r", "b"],
  "f": "s*(y - x)",
  "g": "r*x - x*z - y",
  "h": "-b*z + x*y"
})json";

TEST_CASE("parse_system reads a document") {
  System3D sys = parse_system(kLorenz);
  CHECK(sys.f() == P("s*y - s*x"));
  CHECK(sys.g() == P("r*x - x*z - y"));
  CHECK(sys.h() == P("x*y - b*z"));
  CHECK(sys.params.size() == 3);
  CHECK(sys.g_shift() == P("r*x - x*z - y - z*(s*y - s*x)"));
}

TEST_CASE("parse_system rejects bad documents") {
  CHECK_THROWS(parse_system("not json"));
  CHECK_THROWS(parse_system(R"json({"vars":["x","y"],"f":"x","g":"x","h":"x"})json"));
  CHECK_THROWS(parse_system(
      R"json({"vars":["x","y","z"],"f":"1/x","g":"x","h":"x"})json"));
  CHECK_THROWS(parse_system(
      R"json({"vars":["x","y","z"],"f":"w","g":"x","h":"x"})json"));
  CHECK_THROWS(parse_system(
      R"json({"vars":["x","y","m0"],"f":"x","g":"x","h":"x"})json"));
  CHECK_THROWS(parse_system(
      R"json({"vars":["x","y","z"],"params":["x"],"f":"x","g":"x","h":"x"})json"));
}

TEST_CASE("darboux operator is the flow derivative") {
  System3D sys = parse_system(kLorenz);
  // D[x] = f, D[z^2] = 2 z h
  CHECK(darboux_apply(sys, R("x")) == R("s*y - s*x"));
  CHECK(darboux_apply(sys, R("z^2")) == R("2*z*(x*y - b*z)"));
  CHECK(darboux_apply(sys, RatFun(rat(5))) == RatFun());
}

TEST_CASE("preconditions and ordering retry") {
  System3D ok = parse_system(kLorenz);
  PreconditionReport rep = check_preconditions(ok);
  CHECK(rep.ok());
  REQUIRE(!rep.viable_orderings.empty());
  CHECK(rep.viable_orderings.front() == identity_ordering());

  // g == z*f identically: the shifted combination vanishes.
  System3D bad = parse_system(
      R"json({"vars":["x","y","z"],"f":"1","g":"z","h":"-y"})json");
  PreconditionReport rep2 = check_preconditions(bad);
  CHECK(!rep2.ok());
  CHECK(rep2.f_nonzero);
  CHECK(!rep2.g_shift_nonzero);
  REQUIRE(!rep2.viable_orderings.empty());
  std::array<int, 3> alt{0, 2, 1};
  CHECK(rep2.viable_orderings.front() == alt);
  System3D re = reorder(bad, alt);
  CHECK(re.f() == P("1"));
  CHECK(re.g() == P("-y"));
  CHECK(re.h() == P("z"));
  CHECK(!re.g_shift().is_zero());
}
