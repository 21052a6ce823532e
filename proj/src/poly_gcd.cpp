#include "sfi/poly_gcd.hpp"

#include <stdexcept>

namespace sfi {

bool try_divide(const Polynomial& a, const Polynomial& b, Polynomial& q) {
  if (b.is_zero()) return false;
  if (b.is_constant()) {
    q = a.scaled(Rational(1) / b.constant_value());
    return true;
  }
  Polynomial rem = a;
  std::vector<Term> qterms;
  const Term& lb = b.leading();
  while (!rem.is_zero()) {
    const Term& lr = rem.leading();
    if (!lb.mono.divides(lr.mono)) return false;
    Term t{lr.coeff / lb.coeff, lr.mono.divide(lb.mono)};
    qterms.push_back(t);
    rem = rem - b.mono_scaled(t.coeff, t.mono);
  }
  q = Polynomial::from_terms(std::move(qterms));
  return true;
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  Polynomial q;
  if (!try_divide(a, b, q)) throw std::logic_error("exact_divide: not exact");
  return q;
}

Polynomial pseudo_rem(const Polynomial& a, const Polynomial& b, SymId v) {
  std::uint32_t db = b.degree_in(v);
  if (db == 0) throw std::logic_error("pseudo_rem: divisor free of variable");
  Polynomial lcb = b.coeffs_in(v)[db];
  Polynomial r = a;
  while (!r.is_zero()) {
    std::uint32_t dr = r.degree_in(v);
    if (dr < db) break;
    Polynomial lcr = r.coeffs_in(v)[dr];
    Polynomial shift = Polynomial::term(Rational(1), Monomial(v, dr - db));
    r = lcb * r - lcr * shift * b;
  }
  return r;
}

Polynomial content_in(const Polynomial& p, SymId v) {
  Polynomial g;
  for (auto& c : p.coeffs_in(v)) {
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g.is_constant() && !g.is_zero()) return Polynomial(1);
  }
  return g;
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.primitive_normalized();
  if (b.is_zero()) return a.primitive_normalized();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);

  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  Monomial mg = ma.gcd(mb);
  Polynomial A =
      ma.is_one() ? a : exact_divide(a, Polynomial::term(Rational(1), ma));
  Polynomial B =
      mb.is_one() ? b : exact_divide(b, Polynomial::term(Rational(1), mb));
  Polynomial mono_part = Polynomial::term(Rational(1), mg);
  if (A.is_constant() || B.is_constant())
    return mono_part.primitive_normalized();

  SymId v = std::min(*A.variables().begin(), *B.variables().begin());
  if (!A.depends_on(v)) return (mono_part * poly_gcd(A, content_in(B, v)))
      .primitive_normalized();
  if (!B.depends_on(v)) return (mono_part * poly_gcd(B, content_in(A, v)))
      .primitive_normalized();

  Polynomial contA = content_in(A, v);
  Polynomial contB = content_in(B, v);
  Polynomial cg = poly_gcd(contA, contB);
  Polynomial P = exact_divide(A, contA);
  Polynomial Q = exact_divide(B, contB);
  if (P.degree_in(v) < Q.degree_in(v)) std::swap(P, Q);
  for (;;) {
    Polynomial R = pseudo_rem(P, Q, v);
    if (R.is_zero()) break;
    if (R.degree_in(v) == 0) {
      Q = Polynomial(1);
      break;
    }
    R = exact_divide(R, content_in(R, v)).primitive_normalized();
    P = Q;
    Q = R;
  }
  return (mono_part * cg * Q.primitive_normalized()).primitive_normalized();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero() || p.is_constant()) return p.primitive_normalized();
  Polynomial g = p;
  for (SymId v : p.variables()) g = poly_gcd(g, p.derivative(v));
  if (g.is_constant()) return p.primitive_normalized();
  return exact_divide(p, g).primitive_normalized();
}

}  // namespace sfi
