#include "sfi/expr.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace sfi {

namespace {
Expr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

std::unordered_map<SymId, AtomInfo>& atom_registry() {
  static std::unordered_map<SymId, AtomInfo> reg;
  return reg;
}
}  // namespace

Expr e_num(const Rational& q) {
  ExprNode n;
  n.kind = ExprKind::Num;
  n.value = q;
  return node(std::move(n));
}
Expr e_num(long v) { return e_num(Rational(v)); }

Expr e_sym(SymId v) {
  ExprNode n;
  n.kind = ExprKind::Sym;
  n.symbol = v;
  return node(std::move(n));
}
Expr e_sym(const std::string& name) { return e_sym(sym(name)); }

Expr e_add(std::vector<Expr> xs) {
  if (xs.size() == 1) return xs[0];
  ExprNode n;
  n.kind = ExprKind::Add;
  n.args = std::move(xs);
  return node(std::move(n));
}

Expr e_mul(std::vector<Expr> xs) {
  if (xs.size() == 1) return xs[0];
  ExprNode n;
  n.kind = ExprKind::Mul;
  n.args = std::move(xs);
  return node(std::move(n));
}

Expr e_pow(Expr base, int e) {
  ExprNode n;
  n.kind = ExprKind::Pow;
  n.args = {std::move(base)};
  n.exponent = e;
  return node(std::move(n));
}

Expr e_div(Expr a, Expr b) {
  ExprNode n;
  n.kind = ExprKind::Div;
  n.args = {std::move(a), std::move(b)};
  return node(std::move(n));
}

Expr e_fun(FunKind f, std::vector<Expr> args) {
  ExprNode n;
  n.kind = ExprKind::Fun;
  n.fun = f;
  n.args = std::move(args);
  return node(std::move(n));
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Num:
      return a->value == b->value;
    case ExprKind::Sym:
      return a->symbol == b->symbol;
    case ExprKind::Pow:
      if (a->exponent != b->exponent) return false;
      break;
    case ExprKind::Fun:
      if (a->fun != b->fun) return false;
      break;
    default:
      break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!expr_equal(a->args[i], b->args[i])) return false;
  return true;
}

bool is_atom(SymId id) { return atom_registry().count(id) != 0; }

void reset_symbol_environment() {
  atom_registry().clear();
  SymbolTable::instance().reset();
}

const AtomInfo* atom_info(SymId id) {
  auto it = atom_registry().find(id);
  return it == atom_registry().end() ? nullptr : &it->second;
}

SymId atom_intern(FunKind f, std::vector<Expr> canonical_args) {
  Expr canon = e_fun(f, canonical_args);
  std::string name = expr_str(canon);
  SymbolTable& tab = SymbolTable::instance();
  bool fresh = !tab.contains(name);
  SymId id = tab.intern(name);
  if (fresh) {
    AtomInfo info;
    info.fun = f;
    info.args = std::move(canonical_args);
    info.canon = canon;
    for (auto& a : info.args) {
      auto d = expr_deps(a);
      info.deps.insert(d.begin(), d.end());
    }
    atom_registry().emplace(id, std::move(info));
  }
  return id;
}

RatFun to_ratfun(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Num:
      return RatFun(e->value);
    case ExprKind::Sym:
      return RatFun::variable(e->symbol);
    case ExprKind::Add: {
      RatFun acc;
      for (auto& a : e->args) acc += to_ratfun(a);
      return acc;
    }
    case ExprKind::Mul: {
      RatFun acc(1);
      for (auto& a : e->args) acc *= to_ratfun(a);
      return acc;
    }
    case ExprKind::Pow:
      return to_ratfun(e->args[0]).pow(e->exponent);
    case ExprKind::Div: {
      RatFun d = to_ratfun(e->args[1]);
      if (d.is_zero()) throw PoleError("division by zero in expression");
      return to_ratfun(e->args[0]) / d;
    }
    case ExprKind::Fun: {
      if (e->fun == FunKind::Integral) {
        if (e->args.size() != 2 || e->args[1]->kind != ExprKind::Sym)
          throw std::invalid_argument("integral(body, var) expected");
        Expr body = normalize(e->args[0]);
        if (body->kind == ExprKind::Num && body->value == 0) return RatFun();
        return RatFun::variable(
            atom_intern(FunKind::Integral, {body, e->args[1]}));
      }
      Expr arg = normalize(e->args[0]);
      if (arg->kind == ExprKind::Num) {
        if (e->fun == FunKind::Exp && arg->value == 0) return RatFun(1);
        if (e->fun == FunKind::Ln && arg->value == 1) return RatFun();
        if (e->fun == FunKind::Arctan && arg->value == 0) return RatFun();
      }
      return RatFun::variable(atom_intern(e->fun, {arg}));
    }
  }
  throw std::logic_error("unreachable expression kind");
}

namespace {

// Canonical term builder shared with the parser so printed forms reparse to
// identical trees.
Expr atom_or_sym(SymId v) {
  const AtomInfo* a = atom_info(v);
  return a ? a->canon : e_sym(v);
}

Expr factor_expr(const VarPow& f) {
  Expr base = atom_or_sym(f.var);
  return f.exp == 1 ? base : e_pow(base, static_cast<int>(f.exp));
}

}  // namespace

Expr make_term(const Rational& c, std::vector<Expr> factors) {
  if (factors.empty()) return e_num(c);
  if (c == 1) return e_mul(std::move(factors));
  std::vector<Expr> xs;
  xs.reserve(factors.size() + 1);
  xs.push_back(e_num(c));
  for (auto& f : factors) xs.push_back(std::move(f));
  return e_mul(std::move(xs));
}

Expr from_poly(const Polynomial& p) {
  if (p.is_zero()) return e_num(0);
  std::vector<Expr> terms;
  terms.reserve(p.term_count());
  for (auto& t : p.terms()) {
    std::vector<Expr> fs;
    fs.reserve(t.mono.factors().size());
    for (auto& f : t.mono.factors()) fs.push_back(factor_expr(f));
    terms.push_back(make_term(t.coeff, std::move(fs)));
  }
  return e_add(std::move(terms));
}

Expr from_ratfun(const RatFun& r) {
  if (r.is_polynomial()) {
    if (r.den().constant_value() == 1) return from_poly(r.num());
    return from_poly(r.num().scaled(Rational(1) / r.den().constant_value()));
  }
  return e_div(from_poly(r.num()), from_poly(r.den()));
}

namespace {

RatFun atom_derivative(SymId a, SymId v);

// Total derivative of a polynomial whose variables may include atoms.
RatFun poly_derivative_total(const Polynomial& p, SymId v) {
  RatFun acc(p.derivative(v));
  for (SymId w : p.variables()) {
    if (!is_atom(w)) continue;
    RatFun dw = atom_derivative(w, v);
    if (dw.is_zero()) continue;
    acc += RatFun(p.derivative(w)) * dw;
  }
  return acc;
}

RatFun atom_derivative(SymId a, SymId v) {
  const AtomInfo* info = atom_info(a);
  if (!info) throw std::logic_error("not an atom");
  if (!info->deps.count(v)) return RatFun();
  switch (info->fun) {
    case FunKind::Exp: {
      RatFun du = ratfun_derivative(to_ratfun(info->args[0]), v);
      return RatFun::variable(a) * du;
    }
    case FunKind::Ln: {
      RatFun u = to_ratfun(info->args[0]);
      return ratfun_derivative(u, v) / u;
    }
    case FunKind::Arctan: {
      RatFun u = to_ratfun(info->args[0]);
      return ratfun_derivative(u, v) / (RatFun(1) + u * u);
    }
    case FunKind::Integral: {
      SymId w = info->args[1]->symbol;
      if (w == v) return to_ratfun(info->args[0]);
      Expr dbody = differentiate(info->args[0], v);
      return to_ratfun(e_fun(FunKind::Integral, {dbody, info->args[1]}));
    }
  }
  throw std::logic_error("unreachable atom kind");
}

}  // namespace

RatFun ratfun_derivative(const RatFun& r, SymId v) {
  RatFun dn = poly_derivative_total(r.num(), v);
  if (r.is_polynomial())
    return dn / RatFun(Rational(r.den().constant_value()));
  RatFun dd = poly_derivative_total(r.den(), v);
  return (dn * RatFun(r.den()) - RatFun(r.num()) * dd) /
         RatFun(r.den() * r.den());
}

Expr differentiate(const Expr& e, SymId v) {
  return from_ratfun(ratfun_derivative(to_ratfun(e), v));
}

std::set<SymId> expr_deps(const Expr& e) {
  std::set<SymId> out;
  switch (e->kind) {
    case ExprKind::Num:
      break;
    case ExprKind::Sym: {
      const AtomInfo* a = atom_info(e->symbol);
      if (a)
        out.insert(a->deps.begin(), a->deps.end());
      else
        out.insert(e->symbol);
      break;
    }
    default:
      for (auto& x : e->args) {
        auto d = expr_deps(x);
        out.insert(d.begin(), d.end());
      }
  }
  return out;
}

bool ratfun_depends_on_real(const RatFun& r, SymId v) {
  if (r.depends_on(v)) return true;
  for (SymId w : r.num().variables())
    if (const AtomInfo* a = atom_info(w); a && a->deps.count(v)) return true;
  for (SymId w : r.den().variables())
    if (const AtomInfo* a = atom_info(w); a && a->deps.count(v)) return true;
  return false;
}

Rational eval_rational(const Expr& e, const std::map<SymId, Rational>& pt) {
  switch (e->kind) {
    case ExprKind::Num:
      return e->value;
    case ExprKind::Sym: {
      auto it = pt.find(e->symbol);
      if (it == pt.end()) {
        if (is_atom(e->symbol))
          throw NonRationalError("function application in exact evaluation");
        throw std::invalid_argument("unbound symbol " + sym_name(e->symbol));
      }
      return it->second;
    }
    case ExprKind::Add: {
      Rational s(0);
      for (auto& a : e->args) s += eval_rational(a, pt);
      return s;
    }
    case ExprKind::Mul: {
      Rational s(1);
      for (auto& a : e->args) s *= eval_rational(a, pt);
      return s;
    }
    case ExprKind::Pow: {
      Rational b = eval_rational(e->args[0], pt);
      if (e->exponent < 0) {
        if (b == 0) throw PoleError("zero base, negative exponent");
        return Rational(1) /
               rat_pow(b, static_cast<unsigned>(-e->exponent));
      }
      return rat_pow(b, static_cast<unsigned>(e->exponent));
    }
    case ExprKind::Div: {
      Rational d = eval_rational(e->args[1], pt);
      if (d == 0) throw PoleError("evaluation at a pole");
      return eval_rational(e->args[0], pt) / d;
    }
    case ExprKind::Fun:
      throw NonRationalError("function application in exact evaluation");
  }
  throw std::logic_error("unreachable");
}

double eval_double(const Expr& e, const std::map<SymId, double>& pt) {
  switch (e->kind) {
    case ExprKind::Num:
      return e->value.get_d();
    case ExprKind::Sym: {
      auto it = pt.find(e->symbol);
      if (it != pt.end()) return it->second;
      const AtomInfo* a = atom_info(e->symbol);
      if (a) return eval_double(a->canon, pt);
      throw std::invalid_argument("unbound symbol " + sym_name(e->symbol));
    }
    case ExprKind::Add: {
      double s = 0;
      for (auto& a : e->args) s += eval_double(a, pt);
      return s;
    }
    case ExprKind::Mul: {
      double s = 1;
      for (auto& a : e->args) s *= eval_double(a, pt);
      return s;
    }
    case ExprKind::Pow:
      return std::pow(eval_double(e->args[0], pt), e->exponent);
    case ExprKind::Div:
      return eval_double(e->args[0], pt) / eval_double(e->args[1], pt);
    case ExprKind::Fun:
      switch (e->fun) {
        case FunKind::Exp:
          return std::exp(eval_double(e->args[0], pt));
        case FunKind::Ln:
          return std::log(eval_double(e->args[0], pt));
        case FunKind::Arctan:
          return std::atan(eval_double(e->args[0], pt));
        case FunKind::Integral:
          throw NonRationalError("unevaluated integral in numeric evaluation");
      }
  }
  throw std::logic_error("unreachable");
}

double eval_double(const RatFun& r, const std::map<SymId, double>& pt) {
  return eval_double(from_ratfun(r), pt);
}

std::map<ExponentKey, Expr> collect_coefficients(
    const Expr& e, const std::vector<SymId>& vars) {
  RatFun r = to_ratfun(e);
  for (SymId v : vars) {
    for (SymId w : r.num().variables())
      if (const AtomInfo* a = atom_info(w); a && a->deps.count(v))
        throw NonRationalError("function of a collection variable");
    for (SymId w : r.den().variables())
      if (const AtomInfo* a = atom_info(w); a && a->deps.count(v))
        throw NonRationalError("function of a collection variable");
    if (r.den().depends_on(v))
      throw std::invalid_argument("not polynomial in collection variables");
  }
  std::set<SymId> vs(vars.begin(), vars.end());
  std::map<ExponentKey, Expr> out;
  for (auto& [mono, coeff] : r.num().collect(vs)) {
    ExponentKey key;
    key.e.resize(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i)
      key.e[i] = mono.degree_in(vars[i]);
    out.emplace(std::move(key), from_ratfun(RatFun(coeff, r.den())));
  }
  return out;
}

}  // namespace sfi
