#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sfi/monomial.hpp"
#include "sfi/rational.hpp"

namespace sfi {

struct Term {
  Rational coeff;  // never zero in a stored polynomial
  Monomial mono;
};

// Sparse multivariate polynomial over Q. Terms are kept sorted descending
// under the global graded-lex order, so terms_.front() is the leading term.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT: implicit by design
    if (c != 0) terms_.push_back({c, Monomial()});
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}
  static Polynomial variable(SymId v) {
    return Polynomial::term(Rational(1), Monomial(v));
  }
  static Polynomial term(const Rational& c, const Monomial& m) {
    Polynomial p;
    if (c != 0) p.terms_.push_back({c, m});
    return p;
  }
  static Polynomial from_terms(std::vector<Term> ts);  // sorts and merges

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
  }
  Rational constant_value() const {  // requires is_constant()
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
  }
  const Term& leading() const { return terms_.front(); }  // requires !is_zero
  std::size_t term_count() const { return terms_.size(); }

  std::uint32_t total_degree() const;
  std::uint32_t degree_in(SymId v) const;
  bool depends_on(SymId v) const;
  std::set<SymId> variables() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scaled(const Rational& c) const;
  Polynomial mono_scaled(const Rational& c, const Monomial& m) const;
  Polynomial pow(std::uint32_t e) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  Polynomial derivative(SymId v) const;

  // Substitutions. subst_poly replaces v by an arbitrary polynomial (Horner
  // on the collected powers of v); subst_rat fixes v to a rational value.
  Polynomial subst_poly(SymId v, const Polynomial& value) const;
  Polynomial subst_rat(SymId v, const Rational& value) const;
  Rational eval(const std::map<SymId, Rational>& point) const;  // total eval

  // Coefficients of v^k for k = 0..deg_v, each free of v.
  std::vector<Polynomial> coeffs_in(SymId v) const;
  // Collect with respect to a variable subset: monomial in `vars` ->
  // coefficient polynomial in the remaining variables.
  std::map<Monomial, Polynomial, MonoLess> collect(
      const std::set<SymId>& vars) const;

  // Largest monomial dividing every term (1 if is_zero).
  Monomial monomial_content() const;
  // Positive rational c such that (*this)/c has coprime integer
  // coefficients. Returns 1 for the zero polynomial.
  Rational rational_content() const;
  // Divides out rational_content and normalizes the leading coefficient to
  // be positive. Canonical representative of the Q*-orbit.
  Polynomial primitive_normalized() const;

  std::string str() const;  // diagnostic printer, canonical term order

 private:
  std::vector<Term> terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) {
  return p.scaled(c);
}

// Ascending-order total comparison usable as a container key.
int poly_cmp(const Polynomial& a, const Polynomial& b);
struct PolyLess {
  bool operator()(const Polynomial& a, const Polynomial& b) const {
    return poly_cmp(a, b) < 0;
  }
};

}  // namespace sfi
