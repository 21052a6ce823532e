#pragma once

#include <gmpxx.h>
#include <string>

namespace sfi {

using Rational = mpq_class;

inline Rational rat(long n, long d = 1) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline Rational rat_pow(const Rational& b, unsigned e) {
  Rational r(1);
  Rational base = b;
  unsigned k = e;
  while (k) {
    if (k & 1u) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

// gcd on Q: gcd(p1/q1, p2/q2) = gcd(p1, p2) / lcm(q1, q2), nonnegative.
inline Rational rat_gcd(const Rational& a, const Rational& b) {
  mpz_class num, den;
  mpz_gcd(num.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
  mpz_lcm(den.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace sfi
