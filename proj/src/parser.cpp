#include "sfi/parser.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace sfi {

namespace {

// ---- printing ----

bool is_negative_head(const Expr& e) {
  if (e->kind == ExprKind::Num) return e->value < 0;
  if (e->kind == ExprKind::Mul && e->args[0]->kind == ExprKind::Num)
    return e->args[0]->value < 0;
  return false;
}

std::pair<Rational, std::vector<Expr>> split_term(const Expr& e) {
  if (e->kind == ExprKind::Num) return {e->value, {}};
  if (e->kind == ExprKind::Mul) {
    Rational c(1);
    std::vector<Expr> fs;
    for (auto& a : e->args) {
      if (a->kind == ExprKind::Num)
        c *= a->value;
      else
        fs.push_back(a);
    }
    return {c, std::move(fs)};
  }
  return {Rational(1), {e}};
}

Expr negate_term(const Expr& e) {
  auto [c, fs] = split_term(e);
  return make_term(-c, std::move(fs));
}

void print(std::ostream& os, const Expr& e);

void print_factor(std::ostream& os, const Expr& e) {
  bool parens = e->kind == ExprKind::Add || e->kind == ExprKind::Div ||
                (e->kind == ExprKind::Num && e->value < 0);
  if (parens) os << "(";
  print(os, e);
  if (parens) os << ")";
}

void print(std::ostream& os, const Expr& e) {
  switch (e->kind) {
    case ExprKind::Num:
      os << e->value.get_str();
      return;
    case ExprKind::Sym:
      os << sym_name(e->symbol);
      return;
    case ExprKind::Add: {
      bool first = true;
      for (auto& a : e->args) {
        if (first) {
          print(os, a);
          first = false;
        } else if (is_negative_head(a)) {
          os << " - ";
          print(os, negate_term(a));
        } else {
          os << " + ";
          print(os, a);
        }
      }
      return;
    }
    case ExprKind::Mul: {
      std::size_t start = 0;
      if (e->args[0]->kind == ExprKind::Num && e->args.size() > 1) {
        const Rational& c = e->args[0]->value;
        if (c == -1) {
          os << "-";
        } else {
          os << c.get_str() << "*";
        }
        start = 1;
      }
      for (std::size_t i = start; i < e->args.size(); ++i) {
        if (i > start) os << "*";
        print_factor(os, e->args[i]);
      }
      return;
    }
    case ExprKind::Pow: {
      const Expr& b = e->args[0];
      bool parens = !(b->kind == ExprKind::Sym || b->kind == ExprKind::Fun);
      if (parens) os << "(";
      print(os, b);
      if (parens) os << ")";
      os << "^" << e->exponent;
      return;
    }
    case ExprKind::Div:
      os << "(";
      print(os, e->args[0]);
      os << ")/(";
      print(os, e->args[1]);
      os << ")";
      return;
    case ExprKind::Fun: {
      switch (e->fun) {
        case FunKind::Exp:
          os << "exp(";
          break;
        case FunKind::Ln:
          os << "ln(";
          break;
        case FunKind::Arctan:
          os << "arctan(";
          break;
        case FunKind::Integral:
          os << "integral(";
          break;
      }
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        if (i) os << ", ";
        print(os, e->args[i]);
      }
      os << ")";
      return;
    }
  }
}

// ---- parsing ----

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  char get() {
    char c = peek();
    if (pos < s.size()) ++pos;
    return c;
  }
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "parse error at offset " << pos << ": " << what;
    throw std::invalid_argument(os.str());
  }
};

Expr parse_sum(Lexer& lx);

Rational parse_integer(Lexer& lx) {
  lx.skip_ws();
  std::size_t start = lx.pos;
  while (lx.pos < lx.s.size() &&
         std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
    ++lx.pos;
  if (lx.pos == start) lx.fail("expected integer");
  return Rational(mpz_class(lx.s.substr(start, lx.pos - start)));
}

std::string parse_ident(Lexer& lx) {
  lx.skip_ws();
  std::size_t start = lx.pos;
  auto head = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  };
  auto body = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  if (lx.pos >= lx.s.size() || !head(lx.s[lx.pos])) lx.fail("expected name");
  ++lx.pos;
  while (lx.pos < lx.s.size() && body(lx.s[lx.pos])) ++lx.pos;
  return lx.s.substr(start, lx.pos - start);
}

Expr parse_primary(Lexer& lx) {
  char c = lx.peek();
  if (c == '(') {
    lx.get();
    Expr e = parse_sum(lx);
    if (lx.get() != ')') lx.fail("expected ')'");
    return e;
  }
  if (std::isdigit(static_cast<unsigned char>(c)))
    return e_num(parse_integer(lx));
  std::string name = parse_ident(lx);
  if (lx.peek() == '(') {
    lx.get();
    std::vector<Expr> args;
    args.push_back(parse_sum(lx));
    while (lx.peek() == ',') {
      lx.get();
      args.push_back(parse_sum(lx));
    }
    if (lx.get() != ')') lx.fail("expected ')'");
    FunKind f;
    std::size_t want = 1;
    if (name == "exp") {
      f = FunKind::Exp;
    } else if (name == "ln") {
      f = FunKind::Ln;
    } else if (name == "arctan") {
      f = FunKind::Arctan;
    } else if (name == "integral") {
      f = FunKind::Integral;
      want = 2;
    } else {
      lx.fail("unknown function '" + name + "'");
    }
    if (args.size() != want) lx.fail("wrong argument count for " + name);
    if (f == FunKind::Integral && args[1]->kind != ExprKind::Sym)
      lx.fail("integral variable must be a name");
    return e_fun(f, std::move(args));
  }
  return e_sym(name);
}

Expr parse_factor(Lexer& lx) {
  bool neg = false;
  while (lx.peek() == '-' || lx.peek() == '+') {
    if (lx.get() == '-') neg = !neg;
  }
  Expr e = parse_primary(lx);
  if (lx.peek() == '^') {
    lx.get();
    bool eneg = false;
    if (lx.peek() == '-') {
      lx.get();
      eneg = true;
    }
    Rational r = parse_integer(lx);
    if (!r.get_num().fits_sint_p()) lx.fail("exponent too large");
    int ex = static_cast<int>(r.get_num().get_si());
    e = e_pow(e, eneg ? -ex : ex);
  }
  return neg ? negate_term(e) : e;
}

Expr parse_product(Lexer& lx) {
  Rational coeff(1);
  std::vector<Expr> factors;
  bool divide = false;
  for (;;) {
    Expr f = parse_factor(lx);
    if (divide) {
      if (f->kind == ExprKind::Num) {
        if (f->value == 0) lx.fail("division by zero literal");
        coeff /= f->value;
      } else {
        Expr cur = make_term(coeff, std::move(factors));
        coeff = 1;
        factors.clear();
        factors.push_back(e_div(cur, f));
      }
    } else {
      if (f->kind == ExprKind::Num)
        coeff *= f->value;
      else
        factors.push_back(f);
    }
    char c = lx.peek();
    if (c == '*') {
      lx.get();
      divide = false;
    } else if (c == '/') {
      lx.get();
      divide = true;
    } else {
      break;
    }
  }
  return make_term(coeff, std::move(factors));
}

Expr parse_sum(Lexer& lx) {
  std::vector<Expr> terms;
  bool neg = false;
  if (lx.peek() == '-') {
    lx.get();
    neg = true;
  } else if (lx.peek() == '+') {
    lx.get();
  }
  Expr t = parse_product(lx);
  terms.push_back(neg ? negate_term(t) : t);
  for (;;) {
    char c = lx.peek();
    if (c != '+' && c != '-') break;
    lx.get();
    Expr u = parse_product(lx);
    terms.push_back(c == '-' ? negate_term(u) : u);
  }
  return e_add(std::move(terms));
}

}  // namespace

std::string expr_str(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

Expr parse_expr(const std::string& text) {
  Lexer lx{text};
  Expr e = parse_sum(lx);
  if (lx.peek() != '\0') lx.fail("trailing input");
  return e;
}

}  // namespace sfi
