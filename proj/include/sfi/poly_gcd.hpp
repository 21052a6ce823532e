#pragma once

#include "sfi/polynomial.hpp"

namespace sfi {

// Exact multivariate division: on success q satisfies a == b * q.
bool try_divide(const Polynomial& a, const Polynomial& b, Polynomial& q);
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

// Pseudo-remainder of a by b with respect to v (b must depend on v).
Polynomial pseudo_rem(const Polynomial& a, const Polynomial& b, SymId v);

// gcd of the coefficient polynomials of p viewed in v.
Polynomial content_in(const Polynomial& p, SymId v);

// Primitive-PRS multivariate gcd over Q, returned primitive_normalized.
// gcd(0, 0) == 0; gcd with a nonzero constant is 1.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

// Product of the distinct irreducible factors of p (char 0), normalized.
// Same zero set as p, so constraint ideals may substitute it for p.
Polynomial squarefree_part(const Polynomial& p);

}  // namespace sfi
