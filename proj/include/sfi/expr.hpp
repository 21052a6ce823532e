#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <vector>

#include "sfi/ratfunc.hpp"

namespace sfi {

struct NonRationalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExprKind { Num, Sym, Add, Mul, Pow, Div, Fun };
enum class FunKind { Exp, Ln, Arctan, Integral };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind{};
  Rational value;          // Num
  SymId symbol{};          // Sym
  std::vector<Expr> args;  // Add/Mul children; Pow [base]; Div [num,den]; Fun
  FunKind fun{};           // Fun
  int exponent{};          // Pow
};

Expr e_num(const Rational& q);
Expr e_num(long n);
Expr e_sym(SymId v);
Expr e_sym(const std::string& name);
Expr e_add(std::vector<Expr> xs);   // flattens nothing; callers pass flat lists
Expr e_mul(std::vector<Expr> xs);
Expr e_pow(Expr base, int e);
Expr e_div(Expr a, Expr b);
Expr e_fun(FunKind f, std::vector<Expr> args);

bool expr_equal(const Expr& a, const Expr& b);

// Function applications inside polynomials are carried as interned atom
// symbols; the registry remembers the application they stand for.
struct AtomInfo {
  FunKind fun;
  std::vector<Expr> args;  // canonical
  Expr canon;              // the Fun node itself
  std::set<SymId> deps;    // real (non-atom) symbols it depends on
};
bool is_atom(SymId id);
const AtomInfo* atom_info(SymId id);
SymId atom_intern(FunKind f, std::vector<Expr> canonical_args);

// Forgets every interned symbol and function atom. Ids held by existing
// polynomials or expressions become dangling; callers own that risk. Used to
// make solver runs independent of process history (symbol precedence drives
// pivot and sampling order).
void reset_symbol_environment();

// Expression <-> rational-function bridge. to_ratfun folds all field
// arithmetic; function applications become atoms. from_ratfun produces the
// canonical expression tree (what the printer emits).
RatFun to_ratfun(const Expr& e);
Expr from_ratfun(const RatFun& r);
Expr from_poly(const Polynomial& p);
inline Expr normalize(const Expr& e) { return from_ratfun(to_ratfun(e)); }

// d/dv with atom chain rules; integral atoms differentiate under the sign.
RatFun ratfun_derivative(const RatFun& r, SymId v);
Expr differentiate(const Expr& e, SymId v);

// Real symbols the expression depends on, looking through atoms.
std::set<SymId> expr_deps(const Expr& e);
bool ratfun_depends_on_real(const RatFun& r, SymId v);

Rational eval_rational(const Expr& e, const std::map<SymId, Rational>& pt);
double eval_double(const Expr& e, const std::map<SymId, double>& pt);
double eval_double(const RatFun& r, const std::map<SymId, double>& pt);

// Collect an expression that is polynomial in `vars` (coefficients may be
// rational in the remaining symbols). Throws NonRationalError if a function
// application involves one of `vars`, std::invalid_argument otherwise when
// the expression is not polynomial in them.
struct ExponentKey {
  std::vector<std::uint32_t> e;
  bool operator<(const ExponentKey& o) const { return e < o.e; }
};
std::map<ExponentKey, Expr> collect_coefficients(
    const Expr& e, const std::vector<SymId>& vars);

// Canonical product: coefficient then factors, used by both the printer's
// inverse (the parser) and from_poly so round-trips are structural.
Expr make_term(const Rational& c, std::vector<Expr> factors);

std::string expr_str(const Expr& e);  // canonical printer (parser.cpp)

}  // namespace sfi
