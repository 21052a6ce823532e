#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfi/polynomial.hpp"

namespace sfi {

// Graded reverse lexicographic order with an explicit precedence list
// (highest precedence first). Variables not listed are not allowed in the
// polynomials being compared.
struct MonoOrder {
  std::vector<SymId> prec;
  int cmp(const Monomial& a, const Monomial& b) const;
};

// Index of the leading term of p under the order (p nonzero).
std::size_t leading_index(const Polynomial& p, const MonoOrder& ord);
Term leading_term(const Polynomial& p, const MonoOrder& ord);

// Full normal form of p modulo basis (every term reduced).
Polynomial gb_reduce(Polynomial p, const std::vector<Polynomial>& basis,
                     const MonoOrder& ord);

// Buchberger completion; nullopt when the basis budget is exceeded.
std::optional<std::vector<Polynomial>> buchberger(
    std::vector<Polynomial> gens, const MonoOrder& ord,
    std::size_t max_basis = 96);

// Interreduced primitive-normalized basis, deterministically sorted.
std::vector<Polynomial> interreduce(std::vector<Polynomial> basis,
                                    const MonoOrder& ord);

struct CanonicalConstraints {
  bool inconsistent = false;
  std::vector<Polynomial> basis;       // reduced basis, primitive-normalized
  std::vector<std::string> rendered;   // "b = 1", "r = 0", "s = 1/2", ...
};

// Reduced deterministic description of a parameter-constraint ideal.
CanonicalConstraints canonicalize_constraints(
    const std::vector<Polynomial>& relations, const std::vector<SymId>& params);

}  // namespace sfi
