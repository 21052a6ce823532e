#include "sfi/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sfi {

// ---- Monomial ----

Monomial mono_from_sorted(Monomial::Vec v) {
  Monomial m;
  m.vp_ = std::move(v);
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Vec out;
  auto a = vp_.begin(), b = o.vp_.begin();
  while (a != vp_.end() && b != o.vp_.end()) {
    if (a->var == b->var) {
      out.push_back({a->var, a->exp + b->exp});
      ++a, ++b;
    } else if (a->var < b->var) {
      out.push_back(*a++);
    } else {
      out.push_back(*b++);
    }
  }
  out.insert(out.end(), a, vp_.end());
  out.insert(out.end(), b, o.vp_.end());
  return mono_from_sorted(std::move(out));
}

bool Monomial::divides(const Monomial& o) const {
  auto a = vp_.begin();
  auto b = o.vp_.begin();
  while (a != vp_.end()) {
    while (b != o.vp_.end() && b->var < a->var) ++b;
    if (b == o.vp_.end() || b->var != a->var || b->exp < a->exp) return false;
    ++a;
  }
  return true;
}

Monomial Monomial::divide(const Monomial& o) const {
  // o / *this with the conventional call shape m.divide(o) == o / m is
  // confusing; keep the declared meaning: result = *this / o.
  Vec out;
  auto a = vp_.begin(), b = o.vp_.begin();
  while (a != vp_.end()) {
    if (b == o.vp_.end() || a->var < b->var) {
      out.push_back(*a++);
    } else if (a->var == b->var) {
      if (a->exp < b->exp) throw std::logic_error("monomial division");
      if (a->exp > b->exp) out.push_back({a->var, a->exp - b->exp});
      ++a, ++b;
    } else {
      throw std::logic_error("monomial division");
    }
  }
  if (b != o.vp_.end()) throw std::logic_error("monomial division");
  return mono_from_sorted(std::move(out));
}

Monomial Monomial::gcd(const Monomial& o) const {
  Vec out;
  auto a = vp_.begin(), b = o.vp_.begin();
  while (a != vp_.end() && b != o.vp_.end()) {
    if (a->var == b->var) {
      out.push_back({a->var, std::min(a->exp, b->exp)});
      ++a, ++b;
    } else if (a->var < b->var) {
      ++a;
    } else {
      ++b;
    }
  }
  return mono_from_sorted(std::move(out));
}

Monomial Monomial::lcm(const Monomial& o) const {
  Vec out;
  auto a = vp_.begin(), b = o.vp_.begin();
  while (a != vp_.end() && b != o.vp_.end()) {
    if (a->var == b->var) {
      out.push_back({a->var, std::max(a->exp, b->exp)});
      ++a, ++b;
    } else if (a->var < b->var) {
      out.push_back(*a++);
    } else {
      out.push_back(*b++);
    }
  }
  out.insert(out.end(), a, vp_.end());
  out.insert(out.end(), b, o.vp_.end());
  return mono_from_sorted(std::move(out));
}

Monomial Monomial::without(SymId v) const {
  Vec out;
  for (auto& f : vp_)
    if (f.var != v) out.push_back(f);
  return mono_from_sorted(std::move(out));
}

Monomial Monomial::pow(std::uint32_t e) const {
  if (e == 0) return Monomial();
  Vec out = vp_;
  for (auto& f : out) f.exp *= e;
  return mono_from_sorted(std::move(out));
}

int mono_cmp(const Monomial& a, const Monomial& b) {
  std::uint32_t da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  // Same total degree: lexicographic, scanning from the highest-precedence
  // (smallest id) variable. Higher exponent on an earlier variable wins.
  auto i = a.factors().begin(), j = b.factors().begin();
  while (i != a.factors().end() && j != b.factors().end()) {
    if (i->var != j->var) {
      // The side owning the smaller id has positive exponent there.
      return i->var < j->var ? 1 : -1;
    }
    if (i->exp != j->exp) return i->exp > j->exp ? 1 : -1;
    ++i, ++j;
  }
  if (i != a.factors().end()) return 1;
  if (j != b.factors().end()) return -1;
  return 0;
}

// ---- Polynomial ----

Polynomial Polynomial::from_terms(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) {
    return mono_cmp(x.mono, y.mono) > 0;
  });
  Polynomial p;
  p.terms_.reserve(ts.size());
  for (auto& t : ts) {
    if (t.coeff == 0) continue;
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

std::uint32_t Polynomial::total_degree() const {
  std::uint32_t d = 0;
  for (auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

std::uint32_t Polynomial::degree_in(SymId v) const {
  std::uint32_t d = 0;
  for (auto& t : terms_) d = std::max(d, t.mono.degree_in(v));
  return d;
}

bool Polynomial::depends_on(SymId v) const {
  for (auto& t : terms_)
    if (t.mono.depends_on(v)) return true;
  return false;
}

std::set<SymId> Polynomial::variables() const {
  std::set<SymId> s;
  for (auto& t : terms_)
    for (auto& f : t.mono.factors()) s.insert(f.var);
  return s;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial p;
  p.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    int c = mono_cmp(a->mono, b->mono);
    if (c > 0) {
      p.terms_.push_back(*a++);
    } else if (c < 0) {
      p.terms_.push_back(*b++);
    } else {
      Rational s = a->coeff + b->coeff;
      if (s != 0) p.terms_.push_back({s, a->mono});
      ++a, ++b;
    }
  }
  p.terms_.insert(p.terms_.end(), a, terms_.end());
  p.terms_.insert(p.terms_.end(), b, o.terms_.end());
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + (-o);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.terms_.size() == 1)
    return mono_scaled(o.terms_[0].coeff, o.terms_[0].mono);
  if (terms_.size() == 1)
    return o.mono_scaled(terms_[0].coeff, terms_[0].mono);
  std::map<Monomial, Rational, MonoLess> acc;
  for (auto& ta : terms_)
    for (auto& tb : o.terms_) {
      Monomial m = ta.mono * tb.mono;
      auto [it, fresh] = acc.emplace(std::move(m), ta.coeff * tb.coeff);
      if (!fresh) it->second += ta.coeff * tb.coeff;
    }
  Polynomial p;
  p.terms_.reserve(acc.size());
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    if (it->second != 0) p.terms_.push_back({it->second, it->first});
  return p;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return {};
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Polynomial Polynomial::mono_scaled(const Rational& c, const Monomial& m) const {
  if (c == 0) return {};
  Polynomial p;
  p.terms_.reserve(terms_.size());
  for (auto& t : terms_) p.terms_.push_back({t.coeff * c, t.mono * m});
  return p;  // multiplying by a fixed monomial preserves the term order
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial r(1);
  Polynomial b = *this;
  while (e) {
    if (e & 1u) r *= b;
    if (e >>= 1) b *= b;
  }
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coeff != b.terms_[i].coeff ||
        !(a.terms_[i].mono == b.terms_[i].mono))
      return false;
  return true;
}

Polynomial Polynomial::derivative(SymId v) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    std::uint32_t e = t.mono.degree_in(v);
    if (e == 0) continue;
    Monomial m = t.mono.without(v);
    if (e > 1) m = m * Monomial(v, e - 1);
    out.push_back({t.coeff * Rational(static_cast<long>(e)), m});
  }
  return from_terms(std::move(out));
}

Polynomial Polynomial::subst_poly(SymId v, const Polynomial& value) const {
  if (!depends_on(v)) return *this;
  auto cs = coeffs_in(v);
  Polynomial acc;  // Horner
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * value + *it;
  return acc;
}

Polynomial Polynomial::subst_rat(SymId v, const Rational& value) const {
  if (!depends_on(v)) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    std::uint32_t e = t.mono.degree_in(v);
    if (e == 0) {
      out.push_back(t);
    } else {
      Rational c = t.coeff * rat_pow(value, e);
      if (c != 0) out.push_back({c, t.mono.without(v)});
    }
  }
  return from_terms(std::move(out));
}

Rational Polynomial::eval(const std::map<SymId, Rational>& point) const {
  Rational acc(0);
  for (auto& t : terms_) {
    Rational v = t.coeff;
    for (auto& f : t.mono.factors()) {
      auto it = point.find(f.var);
      if (it == point.end())
        throw std::invalid_argument("eval: unbound variable " +
                                    sym_name(f.var));
      v *= rat_pow(it->second, f.exp);
    }
    acc += v;
  }
  return acc;
}

std::vector<Polynomial> Polynomial::coeffs_in(SymId v) const {
  std::vector<Polynomial> cs(degree_in(v) + 1);
  std::vector<std::vector<Term>> buckets(cs.size());
  std::vector<std::size_t> counts(cs.size(), 0);
  for (auto& t : terms_) ++counts[t.mono.degree_in(v)];
  for (std::size_t i = 0; i < cs.size(); ++i) buckets[i].reserve(counts[i]);
  for (auto& t : terms_) {
    std::uint32_t e = t.mono.degree_in(v);
    buckets[e].push_back({t.coeff, t.mono.without(v)});
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    cs[i] = from_terms(std::move(buckets[i]));
  return cs;
}

std::map<Monomial, Polynomial, MonoLess> Polynomial::collect(
    const std::set<SymId>& vars) const {
  std::map<Monomial, std::vector<Term>, MonoLess> buckets;
  for (auto& t : terms_) {
    Monomial key, rest;
    Monomial::Vec kv, rv;
    for (auto& f : t.mono.factors())
      (vars.count(f.var) ? kv : rv).push_back(f);
    key = mono_from_sorted(std::move(kv));
    rest = mono_from_sorted(std::move(rv));
    buckets[key].push_back({t.coeff, rest});
  }
  std::map<Monomial, Polynomial, MonoLess> out;
  for (auto& [k, ts] : buckets) {
    Polynomial p = from_terms(std::move(ts));
    if (!p.is_zero()) out.emplace(k, std::move(p));
  }
  return out;
}

Monomial Polynomial::monomial_content() const {
  if (is_zero()) return Monomial();
  Monomial g = terms_[0].mono;
  for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i)
    g = g.gcd(terms_[i].mono);
  return g;
}

Rational Polynomial::rational_content() const {
  if (is_zero()) return Rational(1);
  mpz_class num_gcd(0), den_lcm(1);
  for (auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            t.coeff.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            t.coeff.get_den().get_mpz_t());
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  return c;  // positive: gcd/lcm of positives
}

Polynomial Polynomial::primitive_normalized() const {
  if (is_zero()) return *this;
  Rational c = rational_content();
  if (terms_[0].coeff < 0) c = -c;
  return scaled(Rational(1) / c);
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    bool unit = (c == 1) && !t.mono.is_one();
    if (!unit) os << c.get_str();
    bool star = !unit;
    for (auto& f : t.mono.factors()) {
      if (star) os << "*";
      star = true;
      os << sym_name(f.var);
      if (f.exp > 1) os << "^" << f.exp;
    }
  }
  return os.str();
}

int poly_cmp(const Polynomial& a, const Polynomial& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = mono_cmp(ta[i].mono, tb[i].mono);
    if (c != 0) return c;
    if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff ? -1 : 1;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

}  // namespace sfi
