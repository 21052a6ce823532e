#include "sfi/ratfunc.hpp"

namespace sfi {

RatFun::RatFun(Polynomial n, Polynomial d)
    : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw PoleError("division by zero polynomial");
  reduce();
}

void RatFun::reduce() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_divide(num_, g);
      den_ = exact_divide(den_, g);
    }
  }
  Rational c = den_.rational_content();
  if (den_.leading().coeff < 0) c = -c;
  if (c != 1) {
    Rational inv = Rational(1) / c;
    den_ = den_.scaled(inv);
    num_ = num_.scaled(inv);
  }
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
  return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
  return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator*(const RatFun& o) const {
  return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
  if (o.is_zero()) throw PoleError("division by zero");
  return RatFun(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::pow(int e) const {
  if (e == 0) return RatFun(1);
  if (e < 0) {
    if (is_zero()) throw PoleError("zero to negative power");
    return RatFun(den_, num_).pow(-e);
  }
  return RatFun(num_.pow(static_cast<std::uint32_t>(e)),
                den_.pow(static_cast<std::uint32_t>(e)));
}

RatFun RatFun::derivative(SymId v) const {
  if (den_.is_constant())
    return RatFun(num_.derivative(v), den_);
  return RatFun(num_.derivative(v) * den_ - num_ * den_.derivative(v),
                den_ * den_);
}

RatFun RatFun::subst(SymId v, const RatFun& value) const {
  if (!depends_on(v)) return *this;
  std::map<SymId, RatFun> m{{v, value}};
  RatFun dn = poly_subst(den_, m);
  if (dn.is_zero()) throw PoleError("substitution hits a pole");
  return poly_subst(num_, m) / dn;
}

Rational RatFun::eval(const std::map<SymId, Rational>& point) const {
  Rational d = den_.eval(point);
  if (d == 0) throw PoleError("evaluation at a pole");
  return num_.eval(point) / d;
}

std::string RatFun::str() const {
  if (den_.is_constant() && den_.constant_value() == 1) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFun poly_subst(const Polynomial& p, const std::map<SymId, RatFun>& values) {
  SymId hit = 0;
  bool found = false;
  for (auto& [v, r] : values) {
    if (p.depends_on(v)) {
      hit = v;
      found = true;
      break;
    }
  }
  if (!found) return RatFun(p);
  RatFun x = values.at(hit);
  RatFun acc;
  auto cs = p.coeffs_in(hit);
  for (auto it = cs.rbegin(); it != cs.rend(); ++it)
    acc = acc * x + poly_subst(*it, values);
  return acc;
}

}  // namespace sfi
