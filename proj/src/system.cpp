#include "sfi/system.hpp"

#include <json.hpp>
#include <regex>
#include <set>
#include <stdexcept>

#include "sfi/parser.hpp"

namespace sfi {

namespace {

const std::regex kIdent("[A-Za-z_][A-Za-z0-9_]*");
const std::regex kReserved("[mnp][0-9]+|eta");

void check_name(const std::string& n) {
  if (!std::regex_match(n, kIdent))
    throw std::invalid_argument("invalid symbol name '" + n + "'");
  if (std::regex_match(n, kReserved))
    throw std::invalid_argument("symbol name '" + n +
                                "' is reserved for internal use");
}

Polynomial parse_component(const nlohmann::json& doc, const char* key,
                           const std::set<SymId>& allowed) {
  if (!doc.contains(key))
    throw std::invalid_argument(std::string("missing component '") + key +
                                "'");
  std::string text = doc.at(key).get<std::string>();
  RatFun r = to_ratfun(parse_expr(text));
  if (!r.is_polynomial())
    throw std::invalid_argument(std::string("component '") + key +
                                "' is not polynomial");
  Polynomial p = r.num().scaled(Rational(1) / r.den().constant_value());
  for (SymId v : p.variables())
    if (!allowed.count(v))
      throw std::invalid_argument(std::string("component '") + key +
                                  "' uses undeclared symbol '" + sym_name(v) +
                                  "'");
  return p;
}

}  // namespace

Polynomial System3D::g_shift() const {
  return g() - Polynomial::variable(z()) * f();
}

System3D parse_system(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bad system document: ") +
                                e.what());
  }
  if (!doc.contains("vars") || !doc["vars"].is_array() ||
      doc["vars"].size() != 3)
    throw std::invalid_argument("'vars' must list exactly three names");

  System3D sys;
  std::set<std::string> seen;
  for (int i = 0; i < 3; ++i) {
    std::string n = doc["vars"][i].get<std::string>();
    check_name(n);
    if (!seen.insert(n).second)
      throw std::invalid_argument("duplicate variable '" + n + "'");
    sys.vars[i] = sym(n);
  }
  if (doc.contains("params")) {
    if (!doc["params"].is_array())
      throw std::invalid_argument("'params' must be an array");
    for (auto& p : doc["params"]) {
      std::string n = p.get<std::string>();
      check_name(n);
      if (!seen.insert(n).second)
        throw std::invalid_argument("duplicate symbol '" + n + "'");
      sys.params.push_back(sym(n));
    }
  }
  std::set<SymId> allowed(sys.vars.begin(), sys.vars.end());
  allowed.insert(sys.params.begin(), sys.params.end());
  sys.rhs[0] = parse_component(doc, "f", allowed);
  sys.rhs[1] = parse_component(doc, "g", allowed);
  sys.rhs[2] = parse_component(doc, "h", allowed);
  return sys;
}

std::array<int, 3> identity_ordering() { return {0, 1, 2}; }

std::vector<std::array<int, 3>> all_orderings() {
  return {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
}

System3D reorder(const System3D& sys, const std::array<int, 3>& ord) {
  System3D out = sys;
  for (int i = 0; i < 3; ++i) {
    out.vars[i] = sys.vars[ord[i]];
    out.rhs[i] = sys.rhs[ord[i]];
  }
  return out;
}

PreconditionReport check_preconditions(const System3D& sys) {
  PreconditionReport rep;
  rep.f_nonzero = !sys.f().is_zero();
  rep.g_shift_nonzero = !sys.g_shift().is_zero();
  for (auto& ord : all_orderings()) {
    System3D cand = reorder(sys, ord);
    if (!cand.f().is_zero() && !cand.g_shift().is_zero())
      rep.viable_orderings.push_back(ord);
  }
  return rep;
}

RatFun darboux_apply(const System3D& sys, const RatFun& e) {
  RatFun acc;
  for (int i = 0; i < 3; ++i)
    acc += RatFun(sys.rhs[i]) * ratfun_derivative(e, sys.vars[i]);
  return acc;
}

Expr darboux_apply(const System3D& sys, const Expr& e) {
  return from_ratfun(darboux_apply(sys, to_ratfun(e)));
}

System3D specialize(const System3D& sys,
                    const std::map<SymId, Rational>& values) {
  System3D out = sys;
  out.params.clear();
  for (SymId p : sys.params) {
    auto it = values.find(p);
    if (it == values.end()) {
      out.params.push_back(p);
      continue;
    }
    for (auto& comp : out.rhs) comp = comp.subst_rat(p, it->second);
  }
  return out;
}

}  // namespace sfi
