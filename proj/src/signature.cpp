#include "ndk/signature.hpp"

#include "ndk/error.hpp"
#include "ndk/lexer.hpp"

namespace ndk {

void Signature::check_new(const std::string& name) const {
  if (!is_identifier(name)) throw EnvironmentError("'" + name + "' is not a valid identifier");
  if (name == kMembership || name == "v")
    throw EnvironmentError("'" + name + "' is reserved");
  if (kind_of(name)) throw EnvironmentError("'" + name + "' is already declared");
}

void Signature::add_constant(const std::string& name) {
  check_new(name);
  constants_.insert(name);
}

void Signature::add_function(const std::string& name, int arity, bool infix) {
  check_new(name);
  if (arity < 1) throw EnvironmentError("function arity must be at least 1");
  if (infix && arity != 2) throw EnvironmentError("infix display needs arity 2");
  functions_.emplace(name, SymbolInfo{arity, infix});
}

void Signature::add_predicate(const std::string& name, int arity, bool infix) {
  check_new(name);
  if (arity < 1) throw EnvironmentError("predicate arity must be at least 1");
  if (infix && arity != 2) throw EnvironmentError("infix display needs arity 2");
  predicates_.emplace(name, SymbolInfo{arity, infix});
}

void Signature::add_variable(const std::string& name) {
  if (variables_.count(name)) return;
  check_new(name);
  variables_.insert(name);
}

void Signature::set_pretty(const std::string& name, const std::string& display) {
  if (!kind_of(name) || *kind_of(name) == SymbolKind::Variable)
    throw EnvironmentError("pretty form for undeclared symbol '" + name + "'");
  pretty_[name] = display;
}

std::optional<SymbolKind> Signature::kind_of(const std::string& name) const {
  if (constants_.count(name)) return SymbolKind::Constant;
  if (functions_.count(name)) return SymbolKind::Function;
  if (predicates_.count(name)) return SymbolKind::Predicate;
  if (variables_.count(name)) return SymbolKind::Variable;
  return std::nullopt;
}

const SymbolInfo* Signature::function(const std::string& name) const {
  auto it = functions_.find(name);
  return it == functions_.end() ? nullptr : &it->second;
}

const SymbolInfo* Signature::predicate(const std::string& name) const {
  auto it = predicates_.find(name);
  return it == predicates_.end() ? nullptr : &it->second;
}

const std::string* Signature::pretty(const std::string& name) const {
  auto it = pretty_.find(name);
  return it == pretty_.end() ? nullptr : &it->second;
}

}  // namespace ndk
