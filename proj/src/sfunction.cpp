#include "sfi/sfunction.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <sstream>

#include "sfi/expr.hpp"

namespace sfi {

Polynomial sfun_alpha(const System3D& sys) {
  SymId z = sys.z();
  return sys.f() * sys.g().derivative(z) - sys.g() * sys.f().derivative(z);
}

Polynomial sfun_beta(const System3D& sys) {
  SymId y = sys.y(), z = sys.z();
  return sys.g() * sys.f().derivative(y) + sys.f() * sys.h().derivative(z) -
         sys.f() * sys.g().derivative(y) - sys.h() * sys.f().derivative(z);
}

Polynomial sfun_gamma(const System3D& sys) {
  SymId y = sys.y();
  return sys.f() * sys.h().derivative(y) - sys.h() * sys.f().derivative(y);
}

RatFun compatibility_lhs(const System3D& sys, const RatFun& S) {
  RatFun rhs = (S * S * RatFun(sfun_alpha(sys)) + S * RatFun(sfun_beta(sys)) -
                RatFun(sfun_gamma(sys))) /
               RatFun(sys.f());
  return darboux_apply(sys, S) - rhs;
}

namespace {

Polynomial darboux_poly(const System3D& sys, const Polynomial& p) {
  Polynomial acc;
  for (int i = 0; i < 3; ++i) acc += sys.rhs[i] * p.derivative(sys.vars[i]);
  return acc;
}

}  // namespace

Polynomial sfunction_residual(const System3D& sys, const Polynomial& P,
                              const Polynomial& N) {
  Polynomial lhs = sys.f() * (N * darboux_poly(sys, P) -
                              P * darboux_poly(sys, N));
  Polynomial rhs = P * P * sfun_alpha(sys) + P * N * sfun_beta(sys) -
                   N * N * sfun_gamma(sys);
  return lhs - rhs;
}

std::string Branch::dedupe_key() const {
  std::ostringstream os;
  os << expr_str(from_ratfun(S));
  for (auto& c : constraints.rendered) os << "|" << c;
  return os.str();
}

// ---- nonlinear stage ----

namespace {

using Clock = std::chrono::steady_clock;

// Equations are immutable once built; states share them so that branching
// copies refcounts instead of terms.
using EqPtr = std::shared_ptr<const Polynomial>;

inline EqPtr make_eq(Polynomial p) {
  return std::make_shared<const Polynomial>(std::move(p));
}

struct NLState {
  std::vector<EqPtr> eqs;
  // free -> value as recorded at solve time, expressed over the frees that
  // were still open then; solve_order remembers the recording sequence so a
  // leaf can ground everything by back-substitution.
  std::map<SymId, RatFun> solved;
  std::vector<SymId> solve_order;
  ParamAssumptions assume;
  std::vector<Polynomial> param_conditions;
  std::vector<Polynomial> free_conditions;
  int depth = 0;
};

struct EqLess {
  bool operator()(const EqPtr& a, const EqPtr& b) const {
    return PolyLess{}(*a, *b);
  }
};

struct EqEq {
  bool operator()(const EqPtr& a, const EqPtr& b) const { return *a == *b; }
};

class StageSolver {
 public:
  StageSolver(const System3D& sys, const AnsatzTriple& triple,
              const LinearFamily& family, const SFunctionConfig& cfg)
      : sys_(sys), triple_(triple), family_(family), cfg_(cfg) {
    var_set_ = {sys_.vars.begin(), sys_.vars.end()};
    free_set_ = {family_.frees.begin(), family_.frees.end()};
    for (SymId p : degenerate_params(sys_)) seeds_.insert(p);
  }

  SFunctionOutcome run();

 private:
  const System3D& sys_;
  const AnsatzTriple& triple_;
  const LinearFamily& family_;
  const SFunctionConfig& cfg_;
  std::set<SymId> var_set_, free_set_;
  std::set<SymId> seeds_;  // params that must stay nonzero (else f or g-zf dies)
  Polynomial m_hat_, n_hat_, p_hat_;
  std::vector<Polynomial> base_eqs_;
  SFunctionOutcome out_;
  Clock::time_point deadline_;
  Clock::time_point chart_deadline_;
  int leaves_ = 0;
  long moves_[7] = {0, 0, 0, 0, 0, 0, 0};  // [0] normalize rounds, 1..6 moves
  std::set<std::string> seen_;

  bool expired() const { return Clock::now() > deadline_; }
  bool over_budget() const {
    return leaves_ >= cfg_.leaf_budget || expired();
  }
  void note(const std::string& s) { out_.notes.push_back(s); }

  Polynomial reduce_coeffwise(const Polynomial& p,
                              const ParamAssumptions& assume) const;
  void build_base();
  NLState chart_root(std::size_t k);
  void process(NLState st, std::vector<NLState>& stack);
  bool normalize(NLState& st);  // false: state is contradictory
  bool solve_free(NLState& st, SymId u, const RatFun& value);
  bool add_param_rel(NLState& st, Polynomial rel) const;
  bool known_nonzero_sym(const NLState& st, SymId v) const;
  void finish_leaf(NLState& st);
  bool try_leaf_gauge(const NLState& st,
                      const std::map<SymId, RatFun>& gauge);
};

Polynomial StageSolver::reduce_coeffwise(const Polynomial& p,
                                         const ParamAssumptions& assume) const {
  if (assume.empty()) return p;
  Polynomial acc;
  for (auto& [mono, coeff] : p.collect(var_set_)) {
    Polynomial rc = assume.reduce(coeff, sys_.params);
    if (!rc.is_zero()) acc += rc.mono_scaled(Rational(1), mono);
  }
  return acc;
}

void StageSolver::build_base() {
  // Common denominator of the family solution (parameter polynomials from
  // pivots); scaling the whole triple by it keeps S and the identity intact.
  Polynomial lcm(1);
  for (SymId u : triple_.unknowns()) {
    const Polynomial& d = family_.solution.at(u).den();
    lcm = exact_divide(lcm * d, poly_gcd(lcm, d));
  }
  std::map<SymId, RatFun> scaled;
  RatFun L = RatFun(lcm);
  for (SymId u : triple_.unknowns()) {
    RatFun v = family_.solution.at(u) * L;
    scaled[u] = v;
  }
  auto build = [&](const Polynomial& ansatz) {
    RatFun r = poly_subst(ansatz, scaled);
    return r.num().scaled(Rational(1) / r.den().constant_value());
  };
  m_hat_ = build(triple_.M.poly);
  n_hat_ = build(triple_.N.poly);
  p_hat_ = build(triple_.P.poly);

  Polynomial residual = sfunction_residual(sys_, p_hat_, n_hat_);
  for (auto& [mono, coeff] : residual.collect(var_set_)) {
    Polynomial c = family_.assume.reduce(coeff, sys_.params);
    if (c.is_zero()) continue;
    for (auto& t : c.terms()) {
      std::uint32_t d = 0;
      for (auto& f : t.mono.factors())
        if (free_set_.count(f.var)) d += f.exp;
      if (d != 2)
        throw std::logic_error(
            "compatibility system is not homogeneous quadratic");
    }
    base_eqs_.push_back(c.primitive_normalized());
  }
  std::sort(base_eqs_.begin(), base_eqs_.end(), PolyLess{});
  base_eqs_.erase(std::unique(base_eqs_.begin(), base_eqs_.end()),
                  base_eqs_.end());
}

SFunctionOutcome StageSolver::run() {
  deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(
                                     cfg_.time_budget_seconds));
  build_base();
  if (family_.frees.empty()) return out_;  // trivial kernel: nothing to do
  // Chart k pins the first k frees to zero, so high-k charts are the most
  // constrained and resolve fastest; run them first, depth-first, each inside
  // a slice of the remaining time so one chart cannot starve the rest.
  std::size_t ncharts = family_.frees.size();
  std::size_t dropped = 0;
  for (std::size_t n = 0; n < ncharts; ++n) {
    std::size_t k = ncharts - 1 - n;
    if (over_budget()) {
      out_.budget_exhausted = true;
      note("stage budget exhausted before chart " + std::to_string(k));
      break;
    }
    double left =
        std::chrono::duration<double>(deadline_ - Clock::now()).count();
    chart_deadline_ =
        Clock::now() + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(
                               left / static_cast<double>(ncharts - n)));
    std::vector<NLState> stack{chart_root(k)};
    while (!stack.empty()) {
      if (over_budget() || Clock::now() > chart_deadline_) {
        dropped += stack.size();
        break;
      }
      NLState st = std::move(stack.back());
      stack.pop_back();
      process(std::move(st), stack);
    }
  }
  if (dropped > 0) {
    out_.budget_exhausted = true;
    note("time slices exhausted, " + std::to_string(dropped) +
         " states dropped");
  }
  {
    std::ostringstream os;
    os << "moves:";
    for (int i = 1; i <= 6; ++i) os << " m" << i << "=" << moves_[i];
    os << " leaves=" << leaves_;
    note(os.str());
  }
  // Deterministic order, simplest representatives first; degenerate-S last.
  std::stable_sort(
      out_.branches.begin(), out_.branches.end(),
      [](const Branch& a, const Branch& b) {
        auto key = [](const Branch& br) {
          return std::tuple(br.degenerate_s,
                            br.P.total_degree() + br.N.total_degree(),
                            br.P.term_count() + br.N.term_count(),
                            br.dedupe_key());
        };
        return key(a) < key(b);
      });
  return out_;
}

NLState StageSolver::chart_root(std::size_t k) {
  NLState init;
  init.assume = family_.assume;
  for (auto& c : family_.conditions) init.param_conditions.push_back(c);
  std::map<SymId, RatFun> fix;
  for (std::size_t j = 0; j < k; ++j) fix[family_.frees[j]] = RatFun();
  fix[family_.frees[k]] = RatFun(1);
  for (auto& [u, v] : fix) {
    init.solved[u] = v;
    init.solve_order.push_back(u);
  }
  for (auto& eq : base_eqs_) {
    RatFun r = poly_subst(eq, fix);
    Polynomial p = r.num();
    if (!p.is_zero()) init.eqs.push_back(make_eq(p.primitive_normalized()));
  }
  return init;
}

bool StageSolver::known_nonzero_sym(const NLState& st, SymId v) const {
  if (seeds_.count(v)) return true;
  Polynomial p = Polynomial::variable(v);
  for (auto& c : st.param_conditions)
    if (c == p) return true;
  for (auto& c : st.free_conditions)
    if (c == p) return true;
  return false;
}

// p with u := a/b substituted and the denominator cleared, skipping the
// rational-function gcd normalization. The b != 0 guard is recorded by the
// caller when the solve happens, so over the admissible region the zero set
// is unchanged (stray b-factors vanish nowhere on it).
static Polynomial subst_cleared(const Polynomial& p, SymId u,
                                const RatFun& value) {
  auto cs = p.coeffs_in(u);
  const Polynomial& a = value.num();
  const Polynomial& b = value.den();
  Polynomial acc = cs.back();
  Polynomial bp(1);
  for (std::size_t i = cs.size() - 1; i-- > 0;) {
    bp = bp * b;
    acc = acc * a + cs[i] * bp;
  }
  return acc;
}

bool StageSolver::solve_free(NLState& st, SymId u, const RatFun& value) {
  st.solved[u] = value;
  st.solve_order.push_back(u);
  std::vector<EqPtr> next;
  next.reserve(st.eqs.size());
  for (auto& eq : st.eqs) {
    if (!eq->depends_on(u)) {
      next.push_back(std::move(eq));
      continue;
    }
    Polynomial p = subst_cleared(*eq, u, value);
    if (!p.is_zero()) next.push_back(make_eq(p.primitive_normalized()));
  }
  st.eqs = std::move(next);
  std::vector<Polynomial> fc;
  fc.reserve(st.free_conditions.size());
  for (auto& c : st.free_conditions) {
    if (!c.depends_on(u)) {
      fc.push_back(std::move(c));
      continue;
    }
    fc.push_back(subst_cleared(c, u, value));  // zeros caught at the leaf
  }
  st.free_conditions = std::move(fc);
  return true;
}

// Adds a parameter relation, exploiting that seeded parameters are nonzero:
// their monomial factors are stripped first (s*r = 0 forces r = 0, and a pure
// seed power is a contradiction). Returns false when the state dies.
bool StageSolver::add_param_rel(NLState& st, Polynomial rel) const {
  Monomial content = rel.monomial_content();
  Monomial strip;
  for (auto& f : content.factors())
    if (seeds_.count(f.var)) strip = strip * Monomial(f.var, f.exp);
  if (!strip.is_one())
    rel = exact_divide(rel, Polynomial::term(Rational(1), strip));
  if (rel.is_constant()) return rel.is_zero();
  if (!st.assume.add(rel, sys_.params)) return false;
  for (SymId p : seeds_)
    if (st.assume.reduce(Polynomial::variable(p), sys_.params).is_zero())
      return false;
  return true;
}

// Returns false when the state is contradictory.
bool StageSolver::normalize(NLState& st) {
  for (;;) {
    if (!st.assume.empty())
      for (auto& c : st.param_conditions)
        if (st.assume.reduce(c, sys_.params).is_zero()) return false;
    bool changed = false;
    std::vector<EqPtr> next;
    next.reserve(st.eqs.size());
    for (auto& eq0 : st.eqs) {
      Polynomial reduced;
      bool touched = false;
      if (!st.assume.empty()) {
        reduced = st.assume.reduce(*eq0, sys_.params);
        touched = reduced != *eq0;
      }
      const Polynomial& eq = touched ? reduced : *eq0;
      if (touched) changed = true;
      if (eq.is_zero()) continue;
      if (eq.is_constant()) return false;
      bool param_only = true;
      for (auto& t : eq.terms()) {
        for (auto& f : t.mono.factors())
          if (free_set_.count(f.var)) {
            param_only = false;
            break;
          }
        if (!param_only) break;
      }
      if (param_only) {
        if (!add_param_rel(st, eq)) return false;
        changed = true;
        continue;
      }
      // Entries arrive primitive-normalized; only re-normalize what moved.
      next.push_back(touched ? make_eq(reduced.primitive_normalized())
                             : std::move(eq0));
    }
    std::sort(next.begin(), next.end(), EqLess{});
    next.erase(std::unique(next.begin(), next.end(), EqEq{}), next.end());
    st.eqs = std::move(next);
    if (!changed) return true;
  }
}

void StageSolver::process(NLState st, std::vector<NLState>& stack) {
  if (st.depth > cfg_.depth_limit) {
    note("depth limit hit; branch dropped");
    return;
  }
  for (;;) {
    if (expired()) {
      out_.budget_exhausted = true;
      return;
    }
    if (!normalize(st)) return;
    if (st.eqs.empty()) {
      finish_leaf(st);
      return;
    }

    // Move 1: an equation linear in a free with constant coefficient, i.e.
    // the free's only occurrence is a lone degree-one term. One pass per
    // equation collects that per variable.
    bool moved = false;
    for (auto& eqp : st.eqs) {
      const Polynomial& eq = *eqp;
      struct Stat {
        SymId v;
        const Term* lone = nullptr;
        bool other = false;
      };
      std::vector<Stat> stats;
      auto stat_for = [&stats](SymId v) -> Stat& {
        auto it = std::lower_bound(
            stats.begin(), stats.end(), v,
            [](const Stat& s, SymId w) { return s.v < w; });
        if (it == stats.end() || it->v != v) it = stats.insert(it, Stat{v});
        return *it;
      };
      for (auto& t : eq.terms()) {
        bool is_lone =
            t.mono.factors().size() == 1 && t.mono.factors()[0].exp == 1;
        for (auto& f : t.mono.factors()) {
          Stat& s = stat_for(f.var);
          if (is_lone)
            s.lone = &t;
          else
            s.other = true;
        }
      }
      for (auto& s : stats) {
        if (!s.lone || s.other || !free_set_.count(s.v)) continue;
        Rational c = s.lone->coeff;
        std::vector<Term> rest;
        rest.reserve(eq.terms().size() - 1);
        for (auto& t : eq.terms())
          if (&t != s.lone) rest.push_back({t.coeff / -c, t.mono});
        if (!solve_free(st, s.v, RatFun(Polynomial::from_terms(std::move(rest)))))
          return;
        ++moves_[1];
        moved = true;
        break;
      }
      if (moved) break;
    }
    if (moved) continue;

    // Move 2: positive combination of even univariate powers (real points
    // force every variable in it to vanish). A positive constant term makes
    // the equation unsatisfiable.
    for (auto& eqp : st.eqs) {
      const Polynomial& eq = *eqp;
      bool applicable = true;
      bool has_const = false;
      for (auto& t : eq.terms()) {
        if (t.coeff < 0) {
          applicable = false;
          break;
        }
        if (t.mono.is_one()) {
          has_const = true;
          continue;
        }
        if (t.mono.factors().size() != 1 ||
            t.mono.factors()[0].exp % 2 != 0) {
          applicable = false;
          break;
        }
      }
      if (!applicable) continue;
      if (has_const) return;  // positive constant plus squares: no real zero
      std::vector<SymId> forced;
      for (auto& t : eq.terms()) forced.push_back(t.mono.factors()[0].var);
      for (SymId v : forced) {  // solve_free invalidates eq; iterate a copy
        if (free_set_.count(v)) {
          if (!solve_free(st, v, RatFun())) return;
        } else {
          if (!add_param_rel(st, Polynomial::variable(v))) return;
        }
      }
      ++moves_[2];
      moved = true;
      break;
    }
    if (moved) continue;

    // Move 3: equation with a nontrivial monomial factor: branch over which
    // factor vanishes, or none of them.
    for (std::size_t ei = 0; ei < st.eqs.size() && !moved; ++ei) {
      Monomial mc = st.eqs[ei]->monomial_content();
      if (mc.is_one()) continue;
      Polynomial rest = exact_divide(
          *st.eqs[ei], Polynomial::term(Rational(1), mc));
      std::vector<SymId> undecided;
      for (auto& f : mc.factors())
        if (!known_nonzero_sym(st, f.var)) undecided.push_back(f.var);
      ++moves_[3];
      if (undecided.empty()) {
        if (rest.is_constant() && !rest.is_zero()) return;
        st.eqs[ei] = make_eq(rest);  // all factors known nonzero
        moved = true;
        break;
      }
      for (SymId v : undecided) {
        NLState child = st;
        child.depth = st.depth + 1;
        if (free_set_.count(v)) {
          child.eqs.erase(child.eqs.begin() + static_cast<std::ptrdiff_t>(ei));
          if (!solve_free(child, v, RatFun())) continue;
        } else {
          child.eqs.erase(child.eqs.begin() + static_cast<std::ptrdiff_t>(ei));
          if (!add_param_rel(child, Polynomial::variable(v))) continue;
        }
        stack.push_back(std::move(child));
      }
      // Final child: every factor nonzero, equation reduces to the cofactor.
      if (!rest.is_constant() || rest.is_zero()) {
        NLState child = st;
        child.depth = st.depth + 1;
        for (SymId v : undecided) {
          Polynomial vp = Polynomial::variable(v);
          (free_set_.count(v) ? child.free_conditions
                              : child.param_conditions)
              .push_back(vp);
        }
        child.eqs[ei] = make_eq(rest);
        stack.push_back(std::move(child));
      }
      return;  // children enqueued
    }
    if (moved) continue;

    // Move 4: univariate equation: branch on its rational roots; an
    // irreducible remainder is kept as a parameter relation when possible.
    for (auto& eqp : st.eqs) {
      const Polynomial& eq = *eqp;
      auto vars = eq.variables();
      if (vars.size() != 1) continue;
      ++moves_[4];
      SymId t = *vars.begin();
      std::vector<Rational> roots;
      Polynomial rem = eq.primitive_normalized();
      // Integer-coefficient content is already stripped; try small rational
      // roots p/q with p | constant term and q | leading coefficient.
      auto cs = rem.coeffs_in(t);
      mpz_class a0 = cs.front().is_zero()
                         ? mpz_class(0)
                         : cs.front().constant_value().get_num();
      mpz_class an = cs.back().constant_value().get_num();
      auto divisors = [](mpz_class n) {
        // Bounded trial division; huge coefficients may miss roots, which
        // only narrows the enumeration (never emits a wrong branch).
        std::vector<mpz_class> ds;
        n = abs(n);
        for (mpz_class d = 1; d * d <= n && d <= 4096 && ds.size() < 64; ++d)
          if (n % d == 0) {
            ds.push_back(d);
            ds.push_back(n / d);
          }
        return ds;
      };
      std::vector<Rational> candidates{Rational(0)};
      if (a0 != 0)
        for (auto& p : divisors(a0))
          for (auto& q : divisors(an)) {
            Rational r(p, q);
            r.canonicalize();
            candidates.push_back(r);
            candidates.push_back(-r);
          }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()),
                       candidates.end());
      for (auto& r : candidates) {
        for (;;) {
          Polynomial at = rem.subst_rat(t, r);
          if (!at.is_zero()) break;
          roots.push_back(r);
          Polynomial lin = Polynomial::variable(t) * Rational(r.get_den()) -
                           Polynomial(Rational(r.get_num()));
          rem = exact_divide(rem, lin);
          if (rem.is_constant()) break;
        }
        if (rem.is_constant()) break;
      }
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      for (auto& r : roots) {
        NLState child = st;
        child.depth = st.depth + 1;
        std::erase(child.eqs, eqp);
        if (free_set_.count(t)) {
          if (!solve_free(child, t, RatFun(r))) continue;
        } else {
          Polynomial lin = Polynomial::variable(t) - Polynomial(r);
          if (!add_param_rel(child, lin)) continue;
        }
        stack.push_back(std::move(child));
      }
      if (!rem.is_constant()) {
        if (!free_set_.count(t)) {
          NLState child = st;
          child.depth = st.depth + 1;
          std::erase(child.eqs, eqp);
          if (add_param_rel(child, rem)) stack.push_back(std::move(child));
        } else {
          note("irrational root branch dropped for " + sym_name(t));
        }
      }
      return;
    }

    // Move 5: linear in a free with a nonconstant coefficient: case split.
    // The scan counts, per variable in one pass, how many terms carry it
    // linearly (the width of its coefficient) and whether a higher power
    // disqualifies it.
    {
      SymId best_u = 0;
      const EqPtr* best_eq = nullptr;
      std::size_t best_terms = ~std::size_t(0);
      for (auto& eqp : st.eqs) {
        const Polynomial& eq = *eqp;
        struct Width {
          SymId v;
          std::size_t width = 0;
          bool nonlinear = false;
        };
        std::vector<Width> ws;
        auto width_for = [&ws](SymId v) -> Width& {
          auto it = std::lower_bound(
              ws.begin(), ws.end(), v,
              [](const Width& w, SymId x) { return w.v < x; });
          if (it == ws.end() || it->v != v) it = ws.insert(it, Width{v});
          return *it;
        };
        for (auto& t : eq.terms())
          for (auto& f : t.mono.factors()) {
            Width& w = width_for(f.var);
            if (f.exp == 1)
              ++w.width;
            else
              w.nonlinear = true;
          }
        for (auto& w : ws) {
          if (w.nonlinear || !free_set_.count(w.v)) continue;
          if (w.width < best_terms ||
              (w.width == best_terms && (!best_eq || w.v < best_u))) {
            best_terms = w.width;
            best_u = w.v;
            best_eq = &eqp;
          }
        }
      }
      if (best_eq) {
        ++moves_[5];
        EqPtr eq = *best_eq;
        auto cs = eq->coeffs_in(best_u);
        Polynomial a = cs[1], b = cs[0];
        // Zero branch: a = 0 joins the system along with b = 0.
        {
          NLState child = st;
          child.depth = st.depth + 1;
          std::erase(child.eqs, eq);
          child.eqs.push_back(make_eq(a));
          child.eqs.push_back(make_eq(b));
          stack.push_back(std::move(child));
        }
        // Nonzero branch: solve for the free and clear the denominator.
        {
          NLState child = st;
          child.depth = st.depth + 1;
          std::erase(child.eqs, eq);
          bool a_param_only = true;
          for (SymId v : a.variables())
            if (free_set_.count(v)) a_param_only = false;
          (a_param_only ? child.param_conditions : child.free_conditions)
              .push_back(a.primitive_normalized());
          if (solve_free(child, best_u, RatFun(-b) / RatFun(a)))
            stack.push_back(std::move(child));
        }
        return;
      }
    }

    // Move 6: Groebner fallback over frees (precedence) then parameters.
    {
      ++moves_[6];
      std::vector<SymId> prec;
      for (SymId u : family_.frees)
        if (!st.solved.count(u)) prec.push_back(u);
      prec.insert(prec.end(), sys_.params.begin(), sys_.params.end());
      MonoOrder ord{prec};
      std::vector<Polynomial> gens;
      gens.reserve(st.eqs.size() + st.assume.relations.size());
      for (auto& e : st.eqs) gens.push_back(*e);
      for (auto& r : st.assume.relations) gens.push_back(r);
      auto gb = buchberger(gens, ord, cfg_.gb_budget);
      if (!gb) {
        note("groebner budget exceeded; branch dropped unresolved");
        return;
      }
      std::vector<Polynomial> nb = *gb;
      std::sort(nb.begin(), nb.end(), PolyLess{});
      if (nb.size() == st.eqs.size() &&
          std::equal(nb.begin(), nb.end(), st.eqs.begin(),
                     [](const Polynomial& a, const EqPtr& b) {
                       return a == *b;
                     })) {
        note("stuck nonlinear system; branch dropped unresolved");
        return;
      }
      st.eqs.clear();
      for (auto& p : nb) st.eqs.push_back(make_eq(std::move(p)));
      st.depth += 1;
      continue;
    }
  }
}

bool StageSolver::try_leaf_gauge(const NLState& st,
                                 const std::map<SymId, RatFun>& gauge) {
  // Ground the solved values by back-substitution: an entry only references
  // frees that were still open when it was recorded, i.e. gauge frees and
  // entries solved after it. A pole means the gauge lands on a division
  // guard's zero, so the fill is inadmissible rather than an error.
  std::map<SymId, RatFun> full = gauge;
  try {
    for (auto it = st.solve_order.rbegin(); it != st.solve_order.rend();
         ++it) {
      RatFun r = st.solved.at(*it);
      for (auto& [w, g] : full)
        if (r.depends_on(w)) r = r.subst(w, g);
      full[*it] = st.assume.reduce(r, sys_.params);
    }
  } catch (const PoleError&) {
    return false;
  }
  // Clear parameter denominators with a joint rescale of the triple.
  Polynomial lcm(1);
  for (auto& [u, v] : full) {
    lcm = exact_divide(lcm * v.den(), poly_gcd(lcm, v.den()));
  }
  std::map<SymId, RatFun> scaled;
  for (auto& [u, v] : full) scaled[u] = v * RatFun(lcm);
  auto build = [&](const Polynomial& hat) {
    RatFun r = poly_subst(hat, scaled);
    Polynomial p = r.num().scaled(Rational(1) / r.den().constant_value());
    return reduce_coeffwise(p, st.assume);
  };
  Polynomial Pl = build(p_hat_), Nl = build(n_hat_), Ml = build(m_hat_);
  if (Nl.is_zero()) return false;

  // Division guards involving frees must stay nonzero at the leaf.
  std::vector<Polynomial> excluded;
  for (auto& c : st.free_conditions) {
    RatFun r = poly_subst(c, full);
    Polynomial q = st.assume.reduce(r.num(), sys_.params);
    if (q.is_zero()) return false;
    if (!q.is_constant()) excluded.push_back(q.primitive_normalized());
  }
  for (auto& c : st.param_conditions) {
    Polynomial q = st.assume.reduce(c, sys_.params);
    if (q.is_zero()) return false;  // should not happen: add() guards
    if (!q.is_constant()) excluded.push_back(q.primitive_normalized());
  }

  Polynomial residual = sfunction_residual(sys_, Pl, Nl);
  if (!reduce_coeffwise(residual, st.assume).is_zero()) {
    note("residual recheck failed; branch dropped");
    return false;
  }

  auto constraints = canonicalize_constraints(
      st.assume.as_relations(sys_.params), sys_.params);
  if (constraints.inconsistent) return false;

  // Joint cosmetic normalization of the representative triple.
  Rational c = rat_gcd(rat_gcd(Ml.rational_content(), Nl.rational_content()),
                       Pl.rational_content());
  if (Nl.leading().coeff < 0) c = -c;
  if (c != 0 && c != 1) {
    Rational inv = Rational(1) / c;
    Ml = Ml.scaled(inv);
    Nl = Nl.scaled(inv);
    Pl = Pl.scaled(inv);
  }

  Branch br;
  br.S = RatFun(Pl) / RatFun(Nl);
  br.M = Ml;
  br.N = Nl;
  br.P = Pl;
  br.constraints = std::move(constraints);
  std::sort(excluded.begin(), excluded.end(), PolyLess{});
  excluded.erase(std::unique(excluded.begin(), excluded.end()),
                 excluded.end());
  br.excluded = std::move(excluded);
  br.degenerate_s = br.S.is_zero();
  br.found_deg_mn = triple_.deg_mn;
  br.found_deg_p = triple_.deg_p;
  if (seen_.insert(br.dedupe_key()).second)
    out_.branches.push_back(std::move(br));
  return true;
}

// A leaf's surviving frees are genuine moduli: distinct values can encode
// functionally distinct invariants (not just a projective rescale). Sample a
// small deterministic grid over {0, 1, -1}; duplicates collapse via the
// branch key.
void StageSolver::finish_leaf(NLState& st) {
  ++leaves_;
  std::vector<SymId> survivors;
  for (SymId u : family_.frees)
    if (!st.solved.count(u)) survivors.push_back(u);
  bool any = false;
  {
    std::map<SymId, RatFun> gauge;
    for (SymId u : survivors) gauge[u] = RatFun();
    any |= try_leaf_gauge(st, gauge);
  }
  for (SymId axis : survivors)
    for (int sign : {1, -1}) {
      std::map<SymId, RatFun> gauge;
      for (SymId u : survivors)
        gauge[u] = RatFun(u == axis ? Rational(sign) : Rational(0));
      any |= try_leaf_gauge(st, gauge);
    }
  if (!survivors.empty()) {
    std::map<SymId, RatFun> gauge;
    for (SymId u : survivors) gauge[u] = RatFun(1);
    any |= try_leaf_gauge(st, gauge);
  }
  if (!any) note("leaf dropped: no admissible gauge");
}

}  // namespace

SFunctionOutcome solve_sfunction_stage(const System3D& sys,
                                       const AnsatzTriple& triple,
                                       const LinearFamily& family,
                                       const SFunctionConfig& cfg) {
  StageSolver solver(sys, triple, family, cfg);
  return solver.run();
}

}  // namespace sfi
