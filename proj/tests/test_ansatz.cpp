#include <doctest.h>

#include "sfi/ansatz.hpp"
#include "test_util.hpp"

using namespace sfi;
using sfi::testing::P;
using sfi::testing::R;

static System3D toy() {
  return parse_system(
      R"json({"vars":["x","y","z"],"f":"x","g":"y","h":"2*z"})json");
}

static System3D lorenz() {
  return parse_system(R"json({
    "vars": ["x", "y", "z"], "params": ["s", "r", "b"],
    "f": "s*(y - x)", "g": "r*x - x*z - y", "h": "-b*z + x*y"})json");
}

TEST_CASE("ansatz enumeration") {
  System3D sys = toy();
  PolyAnsatz a = build_ansatz("m", 1, sys.vars);
  REQUIRE(a.coeffs.size() == 4);  // 1, z, y, x in ascending graded-lex order
  CHECK(a.poly ==
        P("m0 + m1*z + m2*y + m3*x"));
  CHECK(build_ansatz("n", 2, sys.vars).coeffs.size() == 10);
  CHECK(build_ansatz("p", 3, sys.vars).coeffs.size() == 20);
  AnsatzTriple t = build_triple(sys, 2, 1);
  CHECK(t.unknowns().size() == 24);
}

TEST_CASE("determining identity vanishes on a known solution") {
  // For dx=x, dy=y, dz=2z: P=-x*z, N=x*y, M=y*z+x*z^2 satisfies
  // P*(g-z*f) + N*h - f*M = 0.
  System3D sys = toy();
  AnsatzTriple t = build_triple(sys, 3, 2);
  Polynomial det = determining_polynomial(sys, t, SignConvention::Corrected);
  Polynomial wanted_p = P("-x*z"), wanted_n = P("x*y"),
             wanted_m = P("y*z + x*z^2");
  auto assign = [&](const PolyAnsatz& a, const Polynomial& target) {
    std::set<SymId> vars(sys.vars.begin(), sys.vars.end());
    auto coeffs = target.collect(vars);
    for (SymId c : a.coeffs) {
      Monomial m;
      for (auto& term : a.poly.terms())
        if (term.mono.depends_on(c)) {
          m = term.mono.without(c);
          break;
        }
      auto it = coeffs.find(m);
      Rational v =
          it == coeffs.end() ? Rational(0) : it->second.constant_value();
      det = det.subst_rat(c, v);
    }
  };
  assign(t.P, wanted_p);
  assign(t.N, wanted_n);
  assign(t.M, wanted_m);
  CHECK(det.is_zero());
}

TEST_CASE("printed sign convention differs") {
  System3D sys = toy();
  AnsatzTriple t = build_triple(sys, 1, 1);
  Polynomial a = determining_polynomial(sys, t, SignConvention::Corrected);
  Polynomial b = determining_polynomial(sys, t, SignConvention::Printed);
  CHECK(a != b);
  CHECK(a + b == (t.N.poly * sys.h() - sys.f() * t.M.poly).scaled(rat(2)));
}

TEST_CASE("toy linear stage at degree (1,1,1): only the degenerate branch") {
  System3D sys = toy();
  AnsatzTriple t = build_triple(sys, 1, 1);
  auto eqs = determining_equations(sys, t, SignConvention::Corrected);
  LinearOutcome out = solve_linear_stage(eqs, t.unknowns(), sys, 16);
  CHECK(!out.budget_exhausted);
  REQUIRE(out.families.size() == 1);
  const LinearFamily& fam = out.families[0];
  REQUIRE(fam.frees.size() == 1);
  CHECK(sym_name(fam.frees[0]) == "n3");  // coefficient of x in N
  CHECK(fam.solution.at(sym("m1")) == R("2*n3"));
  CHECK(fam.solution.at(sym("p0")).is_zero());
  CHECK(fam.solution.at(sym("p3")).is_zero());

  // Substituting the family back kills every determining equation.
  for (auto& eq : eqs)
    CHECK(poly_subst(eq, fam.solution).is_zero());
}

TEST_CASE("parameter pivots fork zero/nonzero branches") {
  System3D sys = parse_system(
      R"json({"vars":["x","y","z"],"params":["s"],
              "f":"1","g":"y","h":"z"})json");
  SymId s = sym("s"), a = sym("a"), b = sym("b");
  // s*a + b = 0 and b = 0: either s != 0 (all zero) or s = 0 (a free).
  std::vector<Polynomial> eqs{
      Polynomial::variable(s) * Polynomial::variable(a) +
          Polynomial::variable(b),
      Polynomial::variable(b)};
  LinearOutcome out = solve_linear_stage(eqs, {a, b}, sys, 16);
  REQUIRE(out.families.size() == 2);
  int trivial = 0, solved_s = 0;
  for (auto& fam : out.families) {
    if (fam.trivial()) {
      ++trivial;
      CHECK(!fam.conditions.empty());
    } else {
      REQUIRE(fam.frees == std::vector<SymId>{a});
      REQUIRE(fam.assume.solved.count(s));
      CHECK(fam.assume.solved.at(s).is_zero());
      ++solved_s;
    }
  }
  CHECK(trivial == 1);
  CHECK(solved_s == 1);
}

TEST_CASE("degenerate parameters are seeded as nonzero") {
  System3D sys = lorenz();
  auto degen = degenerate_params(sys);
  REQUIRE(degen.size() == 1);
  CHECK(sym_name(degen[0]) == "s");
}

TEST_CASE("lorenz linear stage at (2,2,1) solves the determining system") {
  System3D sys = lorenz();
  AnsatzTriple t = build_triple(sys, 2, 1);
  auto eqs = determining_equations(sys, t, SignConvention::Corrected);
  LinearOutcome out = solve_linear_stage(eqs, t.unknowns(), sys, 16);
  REQUIRE(!out.families.empty());
  for (auto& fam : out.families) {
    for (auto& eq : eqs) {
      RatFun r = poly_subst(eq, fam.solution);
      Polynomial n = fam.assume.reduce(r.num(), sys.params);
      CHECK(n.is_zero());
    }
  }
}
