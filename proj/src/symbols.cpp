#include "sfi/symbols.hpp"

#include <stdexcept>

namespace sfi {

SymbolTable& SymbolTable::instance() {
  static SymbolTable t;
  return t;
}

SymId SymbolTable::intern(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  SymId id = static_cast<SymId>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

bool SymbolTable::contains(const std::string& name) const {
  return index_.count(name) != 0;
}

const std::string& SymbolTable::name(SymId id) const {
  if (id >= names_.size()) throw std::out_of_range("unknown symbol id");
  return names_[id];
}

void SymbolTable::reset() {
  names_.clear();
  index_.clear();
}

}  // namespace sfi
