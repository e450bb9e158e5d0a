#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

namespace ndk {

enum class SymbolKind { Constant, Function, Predicate, Variable };

struct SymbolInfo {
  int arity = 0;
  bool infix = false;

  friend bool operator==(const SymbolInfo&, const SymbolInfo&) = default;
};

// Declared vocabulary of an environment. "Elem" (membership) and "=" are
// built in and never stored here.
//
// Pretty strings: a string containing %1, %2, ... is a display template
// ("(%1 ∪ %2)", "{%1,%2}"); any other string is a symbol that replaces the
// name (binary infix "(a S b)", unary prefix "Sa", constants "S").
class Signature {
 public:
  void add_constant(const std::string& name);
  void add_function(const std::string& name, int arity, bool infix);
  void add_predicate(const std::string& name, int arity, bool infix);
  void add_variable(const std::string& name);
  void set_pretty(const std::string& name, const std::string& display);

  std::optional<SymbolKind> kind_of(const std::string& name) const;
  bool is_constant(const std::string& name) const { return constants_.count(name) > 0; }
  bool is_variable(const std::string& name) const { return variables_.count(name) > 0; }
  const SymbolInfo* function(const std::string& name) const;
  const SymbolInfo* predicate(const std::string& name) const;
  const std::string* pretty(const std::string& name) const;

  const std::set<std::string>& constants() const { return constants_; }
  const std::set<std::string>& variables() const { return variables_; }
  const std::map<std::string, SymbolInfo>& functions() const { return functions_; }
  const std::map<std::string, SymbolInfo>& predicates() const { return predicates_; }
  const std::map<std::string, std::string>& pretty_map() const { return pretty_; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  void check_new(const std::string& name) const;

  std::set<std::string> constants_;
  std::set<std::string> variables_;
  std::map<std::string, SymbolInfo> functions_;
  std::map<std::string, SymbolInfo> predicates_;
  std::map<std::string, std::string> pretty_;
};

inline constexpr const char* kMembership = "Elem";

}  // namespace ndk
