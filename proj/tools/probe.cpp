#include <chrono>
#include <iostream>

#include "sfi/parser.hpp"
#include "sfi/sfunction.hpp"

using namespace sfi;
using Clock = std::chrono::steady_clock;

static double secs(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

int main(int argc, char** argv) {
  int deg = argc > 1 ? std::atoi(argv[1]) : 4;
  reset_symbol_environment();
  sym("x");
  sym("y");
  sym("z");
  System3D sys = parse_system(R"json({
    "vars": ["x", "y", "z"], "params": ["s", "r", "b"],
    "f": "s*(y - x)", "g": "r*x - x*z - y", "h": "-b*z + x*y"})json");

  auto t0 = Clock::now();
  AnsatzTriple t = build_triple(sys, deg, deg - 1);
  auto eqs = determining_equations(sys, t, SignConvention::Corrected);
  auto t1 = Clock::now();
  std::cout << "unknowns: " << t.unknowns().size()
            << "  determining eqs: " << eqs.size() << "  build "
            << secs(t0, t1) << "s" << std::endl;

  LinearOutcome lin = solve_linear_stage(eqs, t.unknowns(), sys, 16);
  auto t2 = Clock::now();
  std::cout << "linear families: " << lin.families.size() << " ("
            << secs(t1, t2) << "s)  budget_exhausted: "
            << lin.budget_exhausted << std::endl;
  for (auto& n : lin.notes) std::cout << "  linear note: " << n << "\n";

  SFunctionConfig cfg;
  cfg.time_budget_seconds = 45;
  int fi = 0;
  for (auto& fam : lin.families) {
    std::cout << "family " << fi++ << " frees=" << fam.frees.size()
              << " conds=" << fam.conditions.size()
              << " relations=" << fam.assume.relations.size()
              << (fam.trivial() ? " [trivial]" : "") << std::endl;
    if (fam.trivial()) continue;
    auto s0 = Clock::now();
    SFunctionOutcome res = solve_sfunction_stage(sys, t, fam, cfg);
    auto s1 = Clock::now();
    std::cout << "  stage " << secs(s0, s1) << "s branches "
              << res.branches.size() << " exhausted " << res.budget_exhausted
              << " notes " << res.notes.size() << std::endl;
    int shown = 0;
    for (auto& n : res.notes)
      if (shown++ < 5) std::cout << "  note: " << n << "\n";
    for (auto& br : res.branches) {
      std::cout << "  S = " << expr_str(from_ratfun(br.S)) << "  constraints:";
      for (auto& c : br.constraints.rendered) std::cout << " [" << c << "]";
      std::cout << "\n";
    }
  }
  std::cout << "total " << secs(t0, Clock::now()) << "s\n";
  return 0;
}
