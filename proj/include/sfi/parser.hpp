#pragma once

#include <string>

#include "sfi/expr.hpp"

namespace sfi {

// Infix grammar: + - * / ^ with usual precedence, ^ binds tightest and takes
// an integer exponent; identifiers; integer and fraction literals; function
// applications exp(u), ln(u), arctan(u), integral(body, var).
// parse_expr(expr_str(e)) == e structurally for canonical expressions.
Expr parse_expr(const std::string& text);

}  // namespace sfi
