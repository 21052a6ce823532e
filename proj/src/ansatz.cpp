#include "sfi/ansatz.hpp"

#include <algorithm>
#include <sstream>

namespace sfi {

PolyAnsatz build_ansatz(const std::string& prefix, std::uint32_t degree,
                        const std::array<SymId, 3>& vars) {
  PolyAnsatz a;
  a.degree = degree;
  std::vector<Monomial> monos;
  for (std::uint32_t i = 0; i <= degree; ++i)
    for (std::uint32_t j = 0; i + j <= degree; ++j)
      for (std::uint32_t k = 0; i + j + k <= degree; ++k) {
        Monomial m = Monomial(vars[0], i) * Monomial(vars[1], j) *
                     Monomial(vars[2], k);
        monos.push_back(m);
      }
  std::sort(monos.begin(), monos.end(), MonoLess{});
  std::vector<Term> terms;
  for (std::size_t idx = 0; idx < monos.size(); ++idx) {
    std::ostringstream name;
    name << prefix << idx;
    SymId c = sym(name.str());
    a.coeffs.push_back(c);
    terms.push_back({Rational(1), monos[idx] * Monomial(c)});
  }
  a.poly = Polynomial::from_terms(std::move(terms));
  return a;
}

std::vector<SymId> AnsatzTriple::unknowns() const {
  std::vector<SymId> u = M.coeffs;
  u.insert(u.end(), N.coeffs.begin(), N.coeffs.end());
  u.insert(u.end(), P.coeffs.begin(), P.coeffs.end());
  return u;
}

AnsatzTriple build_triple(const System3D& sys, std::uint32_t d,
                          std::uint32_t dp) {
  AnsatzTriple t;
  t.deg_mn = d;
  t.deg_p = dp;
  t.M = build_ansatz("m", d, sys.vars);
  t.N = build_ansatz("n", d, sys.vars);
  t.P = build_ansatz("p", dp, sys.vars);
  return t;
}

Polynomial determining_polynomial(const System3D& sys, const AnsatzTriple& t,
                                  SignConvention sign) {
  Polynomial p_term = t.P.poly * sys.g_shift();
  if (sign == SignConvention::Printed) p_term = -p_term;
  return p_term + t.N.poly * sys.h() - sys.f() * t.M.poly;
}

std::vector<Polynomial> determining_equations(const System3D& sys,
                                              const AnsatzTriple& t,
                                              SignConvention sign) {
  Polynomial det = determining_polynomial(sys, t, sign);
  std::set<SymId> vars(sys.vars.begin(), sys.vars.end());
  std::vector<Polynomial> eqs;
  for (auto& [mono, coeff] : det.collect(vars)) eqs.push_back(coeff);
  return eqs;
}

// ---- parameter assumptions ----

Polynomial ParamAssumptions::reduce(Polynomial p,
                                    const std::vector<SymId>& params) const {
  for (std::size_t guard = 0; guard <= solved.size(); ++guard) {
    bool hit = false;
    for (auto& [v, val] : solved) {
      if (!p.depends_on(v)) continue;
      // Solved values are polynomial up to a constant denominator.
      Polynomial value = val.num().scaled(Rational(1) /
                                          val.den().constant_value());
      p = p.subst_poly(v, value);
      hit = true;
    }
    if (!hit) break;
  }
  if (!relations.empty()) p = gb_reduce(p, relations, MonoOrder{params});
  return p;
}

RatFun ParamAssumptions::reduce(const RatFun& r,
                                const std::vector<SymId>& params) const {
  Polynomial n = reduce(r.num(), params);
  Polynomial d = reduce(r.den(), params);
  if (d.is_zero()) throw PoleError("assumptions hit a pole");
  return RatFun(n, d);
}

bool ParamAssumptions::add(Polynomial rel, const std::vector<SymId>& params) {
  rel = reduce(std::move(rel), params);
  if (rel.is_zero()) return true;
  if (rel.is_constant()) return false;
  // The assumption set describes a parameter locus, so only the zero set of
  // a relation matters: drop repeated factors (r^2 = 0 propagates as r = 0).
  rel = squarefree_part(std::move(rel));
  // Solve directly when linear in a parameter with constant coefficient;
  // then the value stays polynomial and substitution is exact.
  for (SymId v : rel.variables()) {
    if (rel.degree_in(v) != 1) continue;
    auto cs = rel.coeffs_in(v);
    if (!cs[1].is_constant()) continue;
    RatFun value =
        RatFun(-cs[0]) / RatFun(Rational(cs[1].constant_value()));
    for (auto& [w, val] : solved) val = val.subst(v, value);
    solved[v] = value;
    // Re-reduce pending relations under the new substitution.
    std::vector<Polynomial> old = std::move(relations);
    relations.clear();
    for (auto& r : old) {
      Polynomial rr = reduce(r, params);
      if (rr.is_zero()) continue;
      if (rr.is_constant()) return false;
      relations.push_back(rr.primitive_normalized());
    }
    return true;
  }
  relations.push_back(rel.primitive_normalized());
  MonoOrder ord{params};
  if (auto gb = buchberger(relations, ord)) relations = *gb;
  for (auto& r : relations)
    if (r.is_constant() && !r.is_zero()) return false;
  return true;
}

std::vector<Polynomial> ParamAssumptions::as_relations(
    const std::vector<SymId>& params) const {
  std::vector<Polynomial> out;
  for (auto& [v, val] : solved) {
    Polynomial rel = Polynomial::variable(v) * val.den() - val.num();
    out.push_back(rel.primitive_normalized());
  }
  out.insert(out.end(), relations.begin(), relations.end());
  return out;
}

bool LinearOutcome::all_trivial() const {
  for (auto& f : families)
    if (!f.trivial()) return false;
  return true;
}

std::vector<SymId> degenerate_params(const System3D& sys) {
  std::vector<SymId> out;
  for (SymId p : sys.params) {
    if (sys.f().subst_rat(p, Rational(0)).is_zero() ||
        sys.g_shift().subst_rat(p, Rational(0)).is_zero())
      out.push_back(p);
  }
  return out;
}

// ---- linear stage ----

namespace {

using Row = std::map<SymId, Polynomial>;

struct ElimState {
  std::vector<Row> rows;
  std::vector<std::pair<SymId, Row>> pivots;
  std::vector<Polynomial> conditions;
  ParamAssumptions assume;
};

bool known_nonzero(const Polynomial& p, const std::vector<Polynomial>& nz) {
  if (p.is_constant()) return !p.is_zero();
  Polynomial q = p.primitive_normalized();
  for (auto& c : nz)
    if (c == q) return true;
  return false;
}

// Factors of e that still need a zero/nonzero case decision: variables of
// the monomial content plus the primitive remaining part.
std::vector<Polynomial> undecided_factors(const Polynomial& e,
                                          const std::vector<Polynomial>& nz) {
  std::vector<Polynomial> out;
  Monomial mc = e.monomial_content();
  Polynomial rest = e;
  for (auto& f : mc.factors()) {
    Polynomial v = Polynomial::variable(f.var);
    if (!known_nonzero(v, nz)) out.push_back(v);
    rest = exact_divide(rest, Polynomial::term(Rational(1),
                                               Monomial(f.var, f.exp)));
  }
  rest = rest.primitive_normalized();
  if (!rest.is_constant() && !known_nonzero(rest, nz)) out.push_back(rest);
  return out;
}

void strip_row_content(Row& row, const std::vector<Polynomial>& nz) {
  if (row.empty()) return;
  // Remove any common factor that cannot vanish: known-nonzero polynomial
  // factors, plus the row-wide rational content.
  Polynomial g;
  for (auto& [u, p] : row) g = poly_gcd(g, p);
  if (!g.is_zero() && !g.is_constant()) {
    Polynomial divisor(1);
    Monomial mc = g.monomial_content();
    for (auto& f : mc.factors()) {
      if (known_nonzero(Polynomial::variable(f.var), nz))
        divisor *= Polynomial::term(Rational(1), Monomial(f.var, f.exp));
    }
    Polynomial rest = exact_divide(
        g, Polynomial::term(Rational(1), mc)).primitive_normalized();
    if (!rest.is_constant() && known_nonzero(rest, nz)) divisor *= rest;
    if (!divisor.is_constant())
      for (auto& [u, p] : row) p = exact_divide(p, divisor);
  }
  Rational scale;
  bool negate = false;
  for (auto& [u, p] : row) {
    scale = (scale == 0) ? p.rational_content() : rat_gcd(scale, p.rational_content());
    if (u == row.begin()->first) negate = p.leading().coeff < 0;
  }
  if (negate) scale = -scale;
  if (scale != 0 && scale != 1) {
    Rational inv = Rational(1) / scale;
    for (auto& [u, p] : row) p = p.scaled(inv);
  }
}

void reduce_row(Row& row, const ParamAssumptions& assume,
                const std::vector<SymId>& params) {
  Row out;
  for (auto& [u, p] : row) {
    Polynomial q = assume.reduce(p, params);
    if (!q.is_zero()) out.emplace(u, std::move(q));
  }
  row = std::move(out);
}

}  // namespace

LinearOutcome solve_linear_stage(const std::vector<Polynomial>& equations,
                                 const std::vector<SymId>& unknowns,
                                 const System3D& sys, int split_budget) {
  LinearOutcome out;
  std::set<SymId> unknown_set(unknowns.begin(), unknowns.end());
  const std::vector<SymId>& params = sys.params;

  ElimState init;
  for (SymId p : degenerate_params(sys))
    init.conditions.push_back(Polynomial::variable(p));
  for (auto& eq : equations) {
    if (eq.is_zero()) continue;
    Row row;
    for (auto& [mono, coeff] : eq.collect(unknown_set)) {
      if (mono.is_one())
        throw std::invalid_argument(
            "determining system is not homogeneous in the unknowns");
      if (mono.total_degree() != 1)
        throw std::invalid_argument(
            "determining system is not linear in the unknowns");
      row.emplace(mono.factors()[0].var, coeff);
    }
    if (!row.empty()) {
      strip_row_content(row, init.conditions);
      init.rows.push_back(std::move(row));
    }
  }

  std::vector<ElimState> stack{std::move(init)};
  int explored = 0;
  while (!stack.empty()) {
    if (explored >= split_budget) {
      out.budget_exhausted = true;
      out.notes.push_back("case-split budget exhausted; " +
                          std::to_string(stack.size()) +
                          " pending branch(es) dropped");
      break;
    }
    ++explored;
    ElimState st = std::move(stack.back());
    stack.pop_back();

    for (;;) {
      // Drop empty rows.
      std::erase_if(st.rows, [](const Row& r) { return r.empty(); });
      if (st.rows.empty()) break;

      // Pivot choice: smallest row, then smallest column id; constant
      // entries strongly preferred.
      std::size_t best_row = st.rows.size();
      SymId best_col = 0;
      bool best_const = false;
      for (std::size_t i = 0; i < st.rows.size(); ++i) {
        for (auto& [u, e] : st.rows[i]) {
          bool is_const = e.is_constant();
          auto better = [&] {
            if (best_row == st.rows.size()) return true;
            if (is_const != best_const) return is_const;
            std::size_t cur = st.rows[i].size();
            std::size_t old = st.rows[best_row].size();
            if (cur != old) return cur < old;
            if (u != best_col) return u < best_col;
            return false;
          };
          if (better()) {
            best_row = i;
            best_col = u;
            best_const = is_const;
          }
          if (is_const) break;  // good enough within this row
        }
      }

      Row pivot_row = st.rows[best_row];
      Polynomial e = pivot_row.at(best_col);

      if (!best_const) {
        auto factors = undecided_factors(e, st.conditions);
        // Spawn the zero branch for each undecided factor, then assume all
        // of them (hence e) nonzero and continue in this state.
        for (auto& f : factors) {
          ElimState zb = st;
          if (!zb.assume.add(f, params)) continue;
          bool degen = false;
          auto vanishes = [&](const Polynomial& p) {
            std::set<SymId> vs(sys.vars.begin(), sys.vars.end());
            for (auto& [m, c] : p.collect(vs))
              if (!zb.assume.reduce(c, params).is_zero()) return false;
            return true;
          };
          if (vanishes(sys.f()) || vanishes(sys.g_shift())) degen = true;
          for (auto& c : zb.conditions)
            if (zb.assume.reduce(c, params).is_zero()) degen = true;
          if (degen) continue;
          for (auto& r : zb.rows) reduce_row(r, zb.assume, params);
          for (auto& [u, r] : zb.pivots) reduce_row(r, zb.assume, params);
          stack.push_back(std::move(zb));
        }
        for (auto& f : factors)
          st.conditions.push_back(f.primitive_normalized());
      }

      // Eliminate best_col from the other rows.
      st.rows.erase(st.rows.begin() + static_cast<std::ptrdiff_t>(best_row));
      for (auto& r : st.rows) {
        auto it = r.find(best_col);
        if (it == r.end()) continue;
        Polynomial d = it->second;
        Row next;
        for (auto& [u, p] : r) {
          if (u == best_col) continue;
          Polynomial q = e * p;
          auto pit = pivot_row.find(u);
          if (pit != pivot_row.end()) q -= d * pit->second;
          if (!q.is_zero()) next.emplace(u, std::move(q));
        }
        for (auto& [u, p] : pivot_row) {
          if (r.count(u)) continue;
          Polynomial q = -(d * p);
          if (u != best_col && !q.is_zero()) next.emplace(u, std::move(q));
        }
        r = std::move(next);
        strip_row_content(r, st.conditions);
      }
      st.pivots.emplace_back(best_col, std::move(pivot_row));
    }

    // Back-substitution over the pivot rows, latest first.
    LinearFamily fam;
    fam.assume = st.assume;
    fam.conditions = st.conditions;
    std::map<SymId, RatFun> vals;
    bool broken = false;
    for (auto it = st.pivots.rbegin(); it != st.pivots.rend(); ++it) {
      Row row = it->second;
      reduce_row(row, st.assume, params);
      auto pit = row.find(it->first);
      if (pit == row.end()) {
        broken = true;  // assumed-nonzero pivot vanished: contradictory
        break;
      }
      RatFun acc;
      for (auto& [u, p] : row) {
        if (u == it->first) continue;
        auto vit = vals.find(u);
        RatFun uval = vit != vals.end() ? vit->second : RatFun::variable(u);
        acc += RatFun(p) * uval;
      }
      vals[it->first] = -acc / RatFun(pit->second);
    }
    if (broken) continue;
    std::set<SymId> pivoted;
    for (auto& [u, r] : st.pivots) pivoted.insert(u);
    for (SymId u : unknowns) {
      if (pivoted.count(u)) {
        fam.solution[u] = vals.at(u);
      } else {
        fam.frees.push_back(u);
        fam.solution[u] = RatFun::variable(u);
      }
    }
    out.families.push_back(std::move(fam));
  }
  return out;
}

}  // namespace sfi
