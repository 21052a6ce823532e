#pragma once

#include <random>
#include <vector>

#include "sfi/expr.hpp"
#include "sfi/parser.hpp"

namespace sfi::testing {

inline Polynomial P(const std::string& s) {
  RatFun r = to_ratfun(parse_expr(s));
  REQUIRE(r.is_polynomial());
  return r.num().scaled(Rational(1) / r.den().constant_value());
}

inline RatFun R(const std::string& s) { return to_ratfun(parse_expr(s)); }

struct PolyGen {
  std::mt19937 rng;
  std::vector<SymId> vars;

  PolyGen(unsigned seed, std::vector<SymId> vs)
      : rng(seed), vars(std::move(vs)) {}

  Rational coeff() {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    return rat(num(rng), den(rng));
  }

  Polynomial poly(int max_terms = 4, int max_deg = 3) {
    std::uniform_int_distribution<int> nt(0, max_terms);
    std::uniform_int_distribution<int> ed(0, max_deg);
    int terms = nt(rng);
    std::vector<Term> ts;
    for (int t = 0; t < terms; ++t) {
      Monomial m;
      for (SymId v : vars) {
        int e = ed(rng);
        if (e > 0) m = m * Monomial(v, static_cast<std::uint32_t>(e));
      }
      Rational c = coeff();
      if (c != 0) ts.push_back({c, m});
    }
    return Polynomial::from_terms(std::move(ts));
  }

  Polynomial nonzero_poly(int max_terms = 4, int max_deg = 3) {
    for (;;) {
      Polynomial p = poly(max_terms, max_deg);
      if (!p.is_zero()) return p;
    }
  }
};

}  // namespace sfi::testing
