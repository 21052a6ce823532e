#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace sfi {

using SymId = std::uint32_t;

// Process-wide interned symbol table. Ids are dense and assigned in
// registration order; the global monomial order treats smaller ids as
// higher precedence, so callers register x, y, z before parameters and
// parameters before ansatz unknowns.
class SymbolTable {
 public:
  static SymbolTable& instance();

  SymId intern(const std::string& name);
  bool contains(const std::string& name) const;
  const std::string& name(SymId id) const;
  std::size_t size() const { return names_.size(); }

  // Testing hook: forgets all symbols. Invalidates outstanding ids.
  void reset();

 private:
  SymbolTable() = default;
  std::vector<std::string> names_;
  std::unordered_map<std::string, SymId> index_;
};

inline SymId sym(const std::string& name) {
  return SymbolTable::instance().intern(name);
}
inline const std::string& sym_name(SymId id) {
  return SymbolTable::instance().name(id);
}

}  // namespace sfi
