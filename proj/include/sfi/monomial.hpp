#pragma once

#include <boost/container/small_vector.hpp>
#include <cstdint>

#include "sfi/symbols.hpp"

namespace sfi {

struct VarPow {
  SymId var;
  std::uint32_t exp;
  friend bool operator==(const VarPow& a, const VarPow& b) {
    return a.var == b.var && a.exp == b.exp;
  }
};

// Exponent vector, sparse, kept sorted by ascending variable id with all
// exponents positive. The empty monomial is 1.
class Monomial {
 public:
  // Inline capacity sized for the working regime: state variables, a few
  // parameters, and a quadratic's worth of ansatz unknowns in one monomial.
  using Vec = boost::container::small_vector<VarPow, 8>;

  Monomial() = default;
  explicit Monomial(SymId v, std::uint32_t e = 1) {
    if (e > 0) vp_.push_back({v, e});
  }

  const Vec& factors() const { return vp_; }
  bool is_one() const { return vp_.empty(); }
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (auto& f : vp_) d += f.exp;
    return d;
  }
  std::uint32_t degree_in(SymId v) const {
    for (auto& f : vp_)
      if (f.var == v) return f.exp;
    return 0;
  }
  bool depends_on(SymId v) const { return degree_in(v) > 0; }

  Monomial operator*(const Monomial& o) const;
  // Exact division; quotient undefined unless divides().
  bool divides(const Monomial& o) const;  // *this | o
  Monomial divide(const Monomial& o) const;  // *this / o
  Monomial gcd(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  Monomial without(SymId v) const;  // drop one variable entirely
  Monomial pow(std::uint32_t e) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.vp_ == b.vp_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return !(a == b);
  }

 private:
  Vec vp_;
  friend Monomial mono_from_sorted(Monomial::Vec v);
};

Monomial mono_from_sorted(Monomial::Vec v);

// Graded lexicographic order; lower symbol id = higher precedence.
// Returns <0, 0, >0 like strcmp, where >0 means a > b.
int mono_cmp(const Monomial& a, const Monomial& b);

struct MonoLess {  // ascending
  bool operator()(const Monomial& a, const Monomial& b) const {
    return mono_cmp(a, b) < 0;
  }
};

}  // namespace sfi
