#pragma once

#include "sfi/expr.hpp"

namespace sfi {

// Antiderivative of a rational function with respect to one variable; the
// other symbols ride along as inert field elements. The pieces are kept
// separate so callers can post-process them (exponentiating a pure-log
// result back into a power product, deciding Liouvillian classification)
// without re-parsing an expression tree.
struct RatIntegral {
  SymId var{};
  RatFun rational;  // polynomial part plus the Hermite rational part
  // coeff * ln(arg); arg is a primitive polynomial (scaling an argument by
  // something free of var only shifts the antiderivative by a "constant",
  // which callers account for by differentiating the actual expression).
  std::vector<std::pair<RatFun, Polynomial>> logs;
  std::vector<std::pair<RatFun, RatFun>> arctans;  // coeff * arctan(arg)
  std::vector<RatFun> residuals;  // pieces left as unevaluated integrals

  bool closed_form() const { return residuals.empty(); }
  bool rational_only() const {
    return logs.empty() && arctans.empty() && residuals.empty();
  }
  Expr to_expr() const;
};

RatIntegral integrate_rational(const RatFun& r, SymId v);

// Exact square root of a polynomial: returns false unless p == q*q for some
// polynomial q over Q (q normalized with positive leading coefficient).
bool try_poly_sqrt(const Polynomial& p, Polynomial& root);
// Square root of a rational function in the same sense.
bool try_ratfun_sqrt(const RatFun& r, RatFun& root);

// One solution of A x = b over the rational-function field, Gaussian
// elimination with free columns pinned to zero; nullopt when inconsistent.
std::optional<std::vector<RatFun>> solve_field_linear(
    std::vector<std::vector<RatFun>> A, std::vector<RatFun> b);

}  // namespace sfi
