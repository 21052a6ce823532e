#include "sfi/ratint.hpp"

#include <optional>

namespace sfi {

namespace {

// Dense univariate polynomial over the field of rational functions in the
// remaining symbols; index = power of the integration variable. Kept
// trimmed: back() is nonzero, empty means zero.
using UPoly = std::vector<RatFun>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly from_ratfun_parts(const Polynomial& p, SymId v, const RatFun& scale) {
  UPoly out;
  for (auto& c : p.coeffs_in(v)) out.push_back(RatFun(c) * scale);
  trim(out);
  return out;
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

RatFun to_ratfun(const UPoly& p, SymId v) {
  RatFun x = RatFun::variable(v);
  RatFun acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly usub(const UPoly& a, const UPoly& b) {
  UPoly out = a;
  if (b.size() > out.size()) out.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

UPoly uscale(const UPoly& a, const RatFun& c) {
  if (c.is_zero()) return {};
  UPoly out = a;
  for (auto& x : out) x *= c;
  return out;
}

// Field coefficients, so plain long division applies.
void udivrem(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  q.clear();
  r = a;
  if (b.empty()) throw std::logic_error("udivrem: division by zero");
  q.assign(a.size(), RatFun());
  while (deg(r) >= deg(b)) {
    std::size_t shift = r.size() - b.size();
    RatFun c = r.back() / b.back();
    q[shift] = c;
    UPoly t(shift);
    t.insert(t.end(), b.begin(), b.end());
    r = usub(r, uscale(t, c));
    if (r.size() > shift + b.size() - 1) r.resize(shift + b.size() - 1);
    trim(r);
  }
  trim(q);
}

UPoly uderiv(const UPoly& a) {
  UPoly out;
  for (std::size_t i = 1; i < a.size(); ++i)
    out.push_back(a[i] * RatFun(Rational(static_cast<long>(i))));
  trim(out);
  return out;
}

UPoly umonic(UPoly a) {
  if (a.empty()) return a;
  RatFun lc = a.back();
  for (auto& c : a) c = c / lc;
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly q, r;
    udivrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return umonic(a);
}

Expr poly_expr(const Polynomial& p) { return from_poly(p); }

// Clears field denominators and rational content from a polynomial-in-v with
// RatFun coefficients; the result generates the same line over the field.
Polynomial primitive_arg(const UPoly& a, SymId v) {
  RatFun r = to_ratfun(a, v);
  return r.num().primitive_normalized();
}

// B / D with D squarefree in v: peel what the heuristics can reach into
// ln / arctan terms and push the rest into an unevaluated residual.
void log_part(const UPoly& B0, const UPoly& D0, SymId v, RatIntegral& out) {
  UPoly B = B0, D = umonic(D0);
  trim(B);
  if (B.empty()) return;
  if (deg(D) < 1) throw std::logic_error("log_part: constant denominator");

  if (deg(D) == 1) {
    // B is a field constant here (deg B < deg D).
    out.logs.emplace_back(B[0], primitive_arg(D, v));
    return;
  }

  // c * D' / D integrates to c * ln(D) whatever the degree is.
  {
    UPoly q, r;
    udivrem(B, uderiv(D), q, r);
    if (r.empty() && deg(q) == 0) {
      out.logs.emplace_back(q[0], primitive_arg(D, v));
      return;
    }
  }

  if (deg(D) == 2) {
    // Monic: D = v^2 + b v + c. Split roots when the discriminant is a
    // perfect square in the field; otherwise complete the square and hope
    // for an arctangent.
    RatFun b = D[1], c = D[0];
    RatFun disc = b * b - RatFun(Rational(4)) * c;
    RatFun sigma;
    RatFun p = B.size() > 1 ? B[1] : RatFun();
    RatFun q = B[0];
    if (try_ratfun_sqrt(disc, sigma) && !sigma.is_zero()) {
      RatFun half(Rational(1, 2));
      RatFun rp = (sigma - b) * half;   // root (-b + sigma)/2
      RatFun rm = (-sigma - b) * half;  // root (-b - sigma)/2
      // Partial fractions: residue at each root is B(root)/(root - other).
      RatFun cp = (p * rp + q) / (rp - rm);
      RatFun cm = (p * rm + q) / (rm - rp);
      UPoly lin_p{-rp, RatFun(1)}, lin_m{-rm, RatFun(1)};
      if (!cp.is_zero()) out.logs.emplace_back(cp, primitive_arg(lin_p, v));
      if (!cm.is_zero()) out.logs.emplace_back(cm, primitive_arg(lin_m, v));
      return;
    }
    // (p v + q)/D = (p/2) D'/D + (q - p b/2)/D.
    RatFun half(Rational(1, 2));
    RatFun clog = p * half;
    if (!clog.is_zero()) out.logs.emplace_back(clog, primitive_arg(D, v));
    RatFun rest = q - p * b * half;
    if (rest.is_zero()) return;
    // 1/D = 1/((v + b/2)^2 + kappa); arctan needs kappa = tau^2.
    RatFun kappa = c - b * b * RatFun(Rational(1, 4));
    RatFun tau;
    if (try_ratfun_sqrt(kappa, tau) && !tau.is_zero()) {
      RatFun u = RatFun::variable(v) + b * half;
      out.arctans.emplace_back(rest / tau, u / tau);
      return;
    }
    UPoly rem{rest};
    out.residuals.push_back(to_ratfun(rem, v) / to_ratfun(D, v));
    return;
  }

  out.residuals.push_back(to_ratfun(B, v) / to_ratfun(D, v));
}

}  // namespace

RatIntegral integrate_rational(const RatFun& r, SymId v) {
  RatIntegral out;
  out.var = v;
  if (r.is_zero()) return out;
  if (!r.depends_on(v)) {
    out.rational = r * RatFun::variable(v);
    return out;
  }

  UPoly num = from_ratfun_parts(r.num(), v, RatFun(1) / RatFun(r.den()));
  // The denominator may still involve v; fold its v-part into the univariate
  // denominator and keep the v-free factor inside the numerator coefficients.
  UPoly den{RatFun(1)};
  if (r.den().depends_on(v)) {
    num = from_ratfun_parts(r.num(), v, RatFun(1));
    den = from_ratfun_parts(r.den(), v, RatFun(1));
  }

  UPoly q, rem;
  udivrem(num, den, q, rem);
  // Polynomial part integrates term by term.
  if (!q.empty()) {
    UPoly anti(q.size() + 1);
    for (std::size_t i = 0; i < q.size(); ++i)
      anti[i + 1] = q[i] / RatFun(Rational(static_cast<long>(i + 1)));
    out.rational += to_ratfun(anti, v);
  }
  if (rem.empty()) return out;

  // Horowitz-Ostrogradsky: rem/den = (A/D1)' + B/D2 with D1 = gcd(den, den')
  // carrying the repeated factors and D2 = den/D1 squarefree.
  UPoly D = umonic(den);
  UPoly D1 = ugcd(D, uderiv(D));
  UPoly D2, zero;
  udivrem(D, D1, D2, zero);
  if (!zero.empty()) throw std::logic_error("squarefree split not exact");
  // Field-monic den was used above; fix rem to match.
  UPoly R = uscale(rem, RatFun(1) / den.back());

  if (deg(D1) == 0) {
    log_part(R, D2, v, out);
    return out;
  }

  // Unknowns: coefficients of A (deg < deg D1) and B (deg < deg D2) in
  //   R = A'*D2 - A*T + B*D1,   T = D1'*D2 / D1  (exact).
  UPoly T, tz;
  udivrem(umul(uderiv(D1), D2), D1, T, tz);
  if (!tz.empty()) throw std::logic_error("Hermite T not exact");
  int na = deg(D1), nb = deg(D2) + 1;
  int rows = deg(D) > 0 ? deg(D) : 1;
  std::vector<std::vector<RatFun>> M(rows,
                                     std::vector<RatFun>(na + nb, RatFun()));
  auto add_poly = [&](const UPoly& p, int col) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (static_cast<int>(i) >= rows)
        throw std::logic_error("Hermite row overflow");
      M[i][col] += p[i];
    }
  };
  for (int j = 0; j < na; ++j) {
    UPoly a(static_cast<std::size_t>(j) + 1);
    a[j] = RatFun(1);
    add_poly(usub(umul(uderiv(a), D2), umul(a, T)), j);
  }
  for (int j = 0; j < nb; ++j) {
    UPoly b(static_cast<std::size_t>(j) + 1);
    b[j] = RatFun(1);
    add_poly(umul(b, D1), na + j);
  }
  std::vector<RatFun> rhs(rows, RatFun());
  for (std::size_t i = 0; i < R.size(); ++i) rhs[i] = R[i];
  auto sol = solve_field_linear(M, rhs);
  if (!sol) throw std::logic_error("Hermite system inconsistent");
  UPoly A(sol->begin(), sol->begin() + na);
  UPoly B(sol->begin() + na, sol->end());
  trim(A);
  trim(B);
  if (!A.empty()) out.rational += to_ratfun(A, v) / to_ratfun(D1, v);
  if (!B.empty()) log_part(B, D2, v, out);
  return out;
}

Expr RatIntegral::to_expr() const {
  std::vector<Expr> parts;
  auto scaled = [](const RatFun& c, Expr e) {
    if (c == RatFun(1)) return e;
    return e_mul({from_ratfun(c), std::move(e)});
  };
  if (!rational.is_zero()) parts.push_back(from_ratfun(rational));
  for (auto& [c, arg] : logs)
    parts.push_back(scaled(c, e_fun(FunKind::Ln, {poly_expr(arg)})));
  for (auto& [c, arg] : arctans)
    parts.push_back(scaled(c, e_fun(FunKind::Arctan, {from_ratfun(arg)})));
  for (auto& body : residuals)
    parts.push_back(e_fun(FunKind::Integral, {from_ratfun(body), e_sym(var)}));
  if (parts.empty()) return e_num(0);
  if (parts.size() == 1) return parts[0];
  return e_add(std::move(parts));
}

bool try_poly_sqrt(const Polynomial& p, Polynomial& root) {
  if (p.is_zero()) {
    root = Polynomial();
    return true;
  }
  if (p.is_constant()) {
    Rational c = p.constant_value();
    if (c < 0) return false;
    mpz_class n = c.get_num(), d = c.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) ||
        !mpz_perfect_square_p(d.get_mpz_t()))
      return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    Rational rc(rn, rd);
    rc.canonicalize();
    root = Polynomial(rc);
    return true;
  }
  // Greedy leading-term peeling: if p = q^2 then lt(q) = sqrt(lt(p)) and the
  // remaining terms are forced one by one by 2*lt(q)*t.
  const Term& lt = p.leading();
  Polynomial lt_sqrt;
  {
    Monomial::Vec half;
    for (auto& f : lt.mono.factors()) {
      if (f.exp % 2) return false;
      half.push_back({f.var, f.exp / 2});
    }
    Polynomial c_root;
    if (!try_poly_sqrt(Polynomial(lt.coeff), c_root)) return false;
    lt_sqrt = Polynomial::term(c_root.constant_value(),
                               mono_from_sorted(std::move(half)));
  }
  Polynomial q = lt_sqrt;
  Polynomial rem = p - q * q;
  Polynomial two_lt = lt_sqrt.scaled(Rational(2));
  std::size_t guard = p.term_count() * p.term_count() + 8;
  while (!rem.is_zero()) {
    if (guard-- == 0) return false;
    const Term& lr = rem.leading();
    if (!two_lt.leading().mono.divides(lr.mono)) return false;
    Term t{lr.coeff / two_lt.leading().coeff,
           lr.mono.divide(two_lt.leading().mono)};
    // Term order must strictly decrease or the peeling diverges.
    Polynomial tp = Polynomial::term(t.coeff, t.mono);
    q += tp;
    rem = p - q * q;
  }
  root = q;
  return true;
}

bool try_ratfun_sqrt(const RatFun& r, RatFun& root) {
  Polynomial rn, rd;
  if (!try_poly_sqrt(r.num(), rn) || !try_poly_sqrt(r.den(), rd)) return false;
  root = RatFun(rn, rd);
  return true;
}

std::optional<std::vector<RatFun>> solve_field_linear(
    std::vector<std::vector<RatFun>> A, std::vector<RatFun> b) {
  std::size_t rows = A.size();
  std::size_t cols = rows ? A[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && A[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[rank]);
    std::swap(b[p], b[rank]);
    RatFun inv = RatFun(1) / A[rank][c];
    for (std::size_t j = c; j < cols; ++j) A[rank][j] *= inv;
    b[rank] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || A[i][c].is_zero()) continue;
      RatFun f = A[i][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[rank][j];
      b[i] -= f * b[rank];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t i = rank; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<RatFun> x(cols, RatFun());
  for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace sfi
