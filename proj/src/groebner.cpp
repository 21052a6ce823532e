#include "sfi/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "sfi/expr.hpp"
#include "sfi/poly_gcd.hpp"

namespace sfi {

int MonoOrder::cmp(const Monomial& a, const Monomial& b) const {
  std::uint32_t da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  // Reverse lex: scan precedence from the lowest; the monomial with the
  // smaller exponent in the first differing position is the larger one.
  for (auto it = prec.rbegin(); it != prec.rend(); ++it) {
    std::uint32_t ea = a.degree_in(*it), eb = b.degree_in(*it);
    if (ea != eb) return ea < eb ? 1 : -1;
  }
  return 0;
}

std::size_t leading_index(const Polynomial& p, const MonoOrder& ord) {
  const auto& ts = p.terms();
  std::size_t best = 0;
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (ord.cmp(ts[i].mono, ts[best].mono) > 0) best = i;
  return best;
}

Term leading_term(const Polynomial& p, const MonoOrder& ord) {
  return p.terms()[leading_index(p, ord)];
}

Polynomial gb_reduce(Polynomial p, const std::vector<Polynomial>& basis,
                     const MonoOrder& ord) {
  if (basis.empty()) return p;
  std::vector<Term> lts;
  lts.reserve(basis.size());
  for (auto& b : basis) lts.push_back(leading_term(b, ord));
  Polynomial out;
  while (!p.is_zero()) {
    // Reduce the currently largest term of p, or move it to the remainder.
    std::size_t li = leading_index(p, ord);
    const Term& lt = p.terms()[li];
    bool hit = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (lts[i].mono.divides(lt.mono)) {
        Rational c = lt.coeff / lts[i].coeff;
        p = p - basis[i].mono_scaled(c, lt.mono.divide(lts[i].mono));
        hit = true;
        break;
      }
    }
    if (!hit) {
      out += Polynomial::term(lt.coeff, lt.mono);
      p = p - Polynomial::term(lt.coeff, lt.mono);
    }
  }
  return out;
}

namespace {

Polynomial s_poly(const Polynomial& f, const Polynomial& g,
                  const MonoOrder& ord) {
  Term lf = leading_term(f, ord);
  Term lg = leading_term(g, ord);
  Monomial l = lf.mono.lcm(lg.mono);
  return f.mono_scaled(Rational(1) / lf.coeff, l.divide(lf.mono)) -
         g.mono_scaled(Rational(1) / lg.coeff, l.divide(lg.mono));
}

}  // namespace

std::optional<std::vector<Polynomial>> buchberger(
    std::vector<Polynomial> gens, const MonoOrder& ord,
    std::size_t max_basis) {
  std::vector<Polynomial> basis;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    basis.push_back(g.primitive_normalized());
  }
  if (basis.empty()) return basis;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      pairs.emplace_back(i, j);
  while (!pairs.empty()) {
    // Normal selection: smallest lcm degree first.
    std::size_t pick = 0;
    std::uint32_t best = ~0u;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      std::uint32_t d = leading_term(basis[i], ord)
                            .mono.lcm(leading_term(basis[j], ord).mono)
                            .total_degree();
      if (d < best) {
        best = d;
        pick = k;
      }
    }
    auto [i, j] = pairs[pick];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(pick));
    Monomial li = leading_term(basis[i], ord).mono;
    Monomial lj = leading_term(basis[j], ord).mono;
    if (li.gcd(lj).is_one()) continue;  // coprime leading terms
    Polynomial s = gb_reduce(s_poly(basis[i], basis[j], ord), basis, ord);
    if (s.is_zero()) continue;
    basis.push_back(s.primitive_normalized());
    if (basis.size() > max_basis) return std::nullopt;
    for (std::size_t k = 0; k + 1 < basis.size(); ++k)
      pairs.emplace_back(k, basis.size() - 1);
  }
  return interreduce(std::move(basis), ord);
}

std::vector<Polynomial> interreduce(std::vector<Polynomial> basis,
                                    const MonoOrder& ord) {
  // Drop redundant generators, then fully reduce each against the rest.
  for (;;) {
    bool changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<Polynomial> others;
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (j != i && !basis[j].is_zero()) others.push_back(basis[j]);
      Polynomial r = gb_reduce(basis[i], others, ord);
      if (r != basis[i]) changed = true;
      basis[i] = r;
    }
    std::vector<Polynomial> next;
    for (auto& b : basis)
      if (!b.is_zero()) next.push_back(b.primitive_normalized());
    std::sort(next.begin(), next.end(),
              [](const Polynomial& a, const Polynomial& b) {
                return poly_cmp(a, b) < 0;
              });
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (!changed && next.size() == basis.size()) return next;
    basis = std::move(next);
    if (basis.size() <= 1) return basis;
  }
}

CanonicalConstraints canonicalize_constraints(
    const std::vector<Polynomial>& relations,
    const std::vector<SymId>& params) {
  CanonicalConstraints out;
  std::vector<Polynomial> gens;
  for (auto& r : relations) {
    if (r.is_zero()) continue;
    if (r.is_constant()) {
      out.inconsistent = true;
      out.rendered = {"inconsistent constraints"};
      return out;
    }
    for (SymId v : r.variables())
      if (std::find(params.begin(), params.end(), v) == params.end())
        throw std::invalid_argument("constraint mentions non-parameter '" +
                                    sym_name(v) + "'");
    gens.push_back(squarefree_part(r));
  }
  if (gens.empty()) return out;
  MonoOrder ord{params};
  // Constraints describe a locus: repeated factors carry no information, so
  // iterate basis computation with squarefree replacement to a fixpoint
  // (degrees strictly drop, so this terminates quickly).
  for (int round = 0; round < 8; ++round) {
    auto gb = buchberger(gens, ord);
    if (!gb) {
      // Canonicalization budget blown: fall back to the interreduced input.
      out.basis = interreduce(gens, ord);
      break;
    }
    out.basis = *gb;
    bool changed = false;
    std::vector<Polynomial> next;
    for (auto& b : out.basis) {
      Polynomial s = squarefree_part(b);
      if (s != b) changed = true;
      next.push_back(std::move(s));
    }
    if (!changed) break;
    gens = std::move(next);
  }
  for (auto& b : out.basis) {
    if (b.is_constant() && !b.is_zero()) {
      out.inconsistent = true;
      out.rendered = {"inconsistent constraints"};
      return out;
    }
  }
  for (auto& b : out.basis) {
    // Solved form when linear with constant coefficient in some parameter.
    std::string best_name;
    Rational best_coeff;
    Polynomial best_rest;
    for (SymId p : b.variables()) {
      if (b.degree_in(p) != 1) continue;
      auto cs = b.coeffs_in(p);
      if (!cs[1].is_constant()) continue;
      std::string nm = sym_name(p);
      if (best_name.empty() || nm < best_name) {
        best_name = nm;
        best_coeff = cs[1].constant_value();
        best_rest = cs[0];
      }
    }
    if (!best_name.empty()) {
      RatFun value = RatFun(-best_rest) / RatFun(Rational(best_coeff));
      out.rendered.push_back(best_name + " = " +
                             expr_str(from_ratfun(value)));
    } else {
      out.rendered.push_back(expr_str(from_poly(b)) + " = 0");
    }
  }
  std::sort(out.rendered.begin(), out.rendered.end());
  return out;
}

}  // namespace sfi
