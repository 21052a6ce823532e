#pragma once

#include <stdexcept>

#include "sfi/poly_gcd.hpp"
#include "sfi/polynomial.hpp"

namespace sfi {

struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reduced fraction of polynomials. Canonical form: gcd(num, den) == 1 and
// den has coprime integer coefficients with positive leading coefficient,
// so equal rational functions compare equal structurally.
class RatFun {
 public:
  RatFun() : num_(), den_(1) {}
  RatFun(Polynomial n) : num_(std::move(n)), den_(1) {}  // NOLINT
  RatFun(const Rational& c) : num_(c), den_(1) {}        // NOLINT
  RatFun(long c) : num_(Rational(c)), den_(1) {}         // NOLINT
  RatFun(Polynomial n, Polynomial d);
  static RatFun variable(SymId v) { return RatFun(Polynomial::variable(v)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const {
    return num_.constant_value() / den_.constant_value();
  }
  bool depends_on(SymId v) const {
    return num_.depends_on(v) || den_.depends_on(v);
  }

  RatFun operator-() const;
  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }
  RatFun pow(int e) const;

  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFun& a, const RatFun& b) {
    return !(a == b);
  }

  RatFun derivative(SymId v) const;
  RatFun subst(SymId v, const RatFun& value) const;
  Rational eval(const std::map<SymId, Rational>& point) const;

  std::string str() const;

 private:
  Polynomial num_, den_;
  void reduce();
};

// Horner evaluation of a polynomial with some variables replaced by
// rational functions; untouched variables stay symbolic.
RatFun poly_subst(const Polynomial& p, const std::map<SymId, RatFun>& values);

}  // namespace sfi
