#pragma once

#include <map>
#include <string>
#include <vector>

#include "sfi/groebner.hpp"
#include "sfi/ratfunc.hpp"
#include "sfi/system.hpp"

namespace sfi {

// Dense polynomial ansatz of bounded total degree in the state variables,
// one fresh coefficient symbol per monomial.
struct PolyAnsatz {
  std::uint32_t degree = 0;
  std::vector<SymId> coeffs;  // enumeration order: ascending graded-lex
  Polynomial poly;
};

PolyAnsatz build_ansatz(const std::string& prefix, std::uint32_t degree,
                        const std::array<SymId, 3>& vars);

struct AnsatzTriple {
  PolyAnsatz M, N, P;
  std::uint32_t deg_mn = 0, deg_p = 0;
  std::vector<SymId> unknowns() const;
};

// M, N of degree d and P of degree dp, named m*/n*/p*.
AnsatzTriple build_triple(const System3D& sys, std::uint32_t d,
                          std::uint32_t dp);

// The corrected identity is P*(g - z*f) + N*h - f*M = 0; Printed flips the
// sign of the P term (kept for regression coverage of the sign convention).
enum class SignConvention { Corrected, Printed };

Polynomial determining_polynomial(const System3D& sys, const AnsatzTriple& t,
                                  SignConvention sign);
// Coefficients of the identity with respect to the state variables: a
// homogeneous linear system for the ansatz coefficients over the parameters.
std::vector<Polynomial> determining_equations(const System3D& sys,
                                              const AnsatzTriple& t,
                                              SignConvention sign);

// Zero-assumptions on parameters accumulated along a case split, split into
// directly solved parameters (polynomial values) and residual relations
// (kept as an interreduced ideal basis).
struct ParamAssumptions {
  std::map<SymId, RatFun> solved;
  std::vector<Polynomial> relations;

  bool empty() const { return solved.empty() && relations.empty(); }
  Polynomial reduce(Polynomial p, const std::vector<SymId>& params) const;
  RatFun reduce(const RatFun& r, const std::vector<SymId>& params) const;
  // Adds "rel == 0"; returns false if that contradicts an assumption already
  // made (the ideal becomes the unit ideal).
  bool add(Polynomial rel, const std::vector<SymId>& params);
  std::vector<Polynomial> as_relations(const std::vector<SymId>& params) const;
};

struct LinearFamily {
  std::map<SymId, RatFun> solution;  // every unknown, in frees and params
  std::vector<SymId> frees;
  std::vector<Polynomial> conditions;  // parameter polys assumed nonzero
  ParamAssumptions assume;
  bool trivial() const { return frees.empty(); }
};

struct LinearOutcome {
  std::vector<LinearFamily> families;
  bool budget_exhausted = false;
  std::vector<std::string> notes;
  bool all_trivial() const;
};

// Parameters whose vanishing kills f or g - z*f identically; such case
// splits are pruned up front.
std::vector<SymId> degenerate_params(const System3D& sys);

LinearOutcome solve_linear_stage(const std::vector<Polynomial>& equations,
                                 const std::vector<SymId>& unknowns,
                                 const System3D& sys, int split_budget);

}  // namespace sfi
