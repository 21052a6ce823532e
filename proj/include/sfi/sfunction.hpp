#pragma once

#include "sfi/ansatz.hpp"

namespace sfi {

// Coefficient fields of the compatibility equation for S = I_y / I_z along
// the flow: D[S] = (S^2*alpha + S*beta - gamma) / f.
Polynomial sfun_alpha(const System3D& sys);  // f*g_z - g*f_z
Polynomial sfun_beta(const System3D& sys);   // g*f_y + f*h_z - f*g_y - h*f_z
Polynomial sfun_gamma(const System3D& sys);  // f*h_y - h*f_y

// D[S] - (S^2*alpha + S*beta - gamma)/f for a rational S (exact form).
RatFun compatibility_lhs(const System3D& sys, const RatFun& S);

// Denominator-cleared residual for S = P/N:
// f*(N*D[P] - P*D[N]) - P^2*alpha - P*N*beta + N^2*gamma.
// Polynomial in the state variables whose coefficients must vanish.
Polynomial sfunction_residual(const System3D& sys, const Polynomial& P,
                              const Polynomial& N);

struct Branch {
  RatFun S;
  Polynomial M, N, P;  // gauge-fixed representatives
  CanonicalConstraints constraints;
  std::vector<Polynomial> excluded;  // parameter polys assumed nonzero
  bool degenerate_s = false;
  std::uint32_t found_deg_mn = 0, found_deg_p = 0;
  std::string dedupe_key() const;
};

struct SFunctionConfig {
  int leaf_budget = 512;
  int depth_limit = 48;
  double time_budget_seconds = 60.0;
  std::size_t gb_budget = 64;
};

struct SFunctionOutcome {
  std::vector<Branch> branches;
  std::vector<std::string> notes;
  bool budget_exhausted = false;
};

// Enumerates solutions of the quadratic compatibility system for one linear
// family, fixing the projective gauge freedom of (M, N, P).
SFunctionOutcome solve_sfunction_stage(const System3D& sys,
                                       const AnsatzTriple& triple,
                                       const LinearFamily& family,
                                       const SFunctionConfig& cfg);

}  // namespace sfi
