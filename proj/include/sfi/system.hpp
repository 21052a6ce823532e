#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sfi/expr.hpp"

namespace sfi {

// dx/dt = f, dy/dt = g, dz/dt = h with polynomial right-hand sides over the
// state variables and symbolic parameters. vars[0] plays the role of x
// (the reduction treats it as the inert variable), vars[1] of y, vars[2] of z.
struct System3D {
  std::array<SymId, 3> vars{};
  std::vector<SymId> params;
  std::array<Polynomial, 3> rhs;  // f, g, h

  SymId x() const { return vars[0]; }
  SymId y() const { return vars[1]; }
  SymId z() const { return vars[2]; }
  const Polynomial& f() const { return rhs[0]; }
  const Polynomial& g() const { return rhs[1]; }
  const Polynomial& h() const { return rhs[2]; }

  // g - z*f, the combination whose vanishing degenerates the method.
  Polynomial g_shift() const;
};

struct PreconditionReport {
  bool f_nonzero = false;
  bool g_shift_nonzero = false;
  bool ok() const { return f_nonzero && g_shift_nonzero; }
  // Orderings (as index triples into the original vars) that satisfy both
  // conditions, in deterministic enumeration order; identity first if viable.
  std::vector<std::array<int, 3>> viable_orderings;
};

// Parses {"vars": [...3 names...], "params": [...], "f": ..., "g": ...,
// "h": ...}. Right-hand sides must normalize to polynomials in the declared
// symbols. Names matching the ansatz-coefficient pattern [mnp]<digits> and
// the name "eta" are reserved.
System3D parse_system(const std::string& json_text);

std::array<int, 3> identity_ordering();
std::vector<std::array<int, 3>> all_orderings();
System3D reorder(const System3D& sys, const std::array<int, 3>& ord);

PreconditionReport check_preconditions(const System3D& sys);

// The flow derivative f*d/dx + g*d/dy + h*d/dz.
RatFun darboux_apply(const System3D& sys, const RatFun& e);
Expr darboux_apply(const System3D& sys, const Expr& e);

// Fixes some parameters to rational values (they leave sys.params).
System3D specialize(const System3D& sys,
                    const std::map<SymId, Rational>& values);

}  // namespace sfi
