#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ndk/expr.hpp"
#include "ndk/signature.hpp"

namespace ndk {

struct PredicateDefinition {
  std::string name;
  std::vector<std::string> params;
  Expr body;

  // body[t1/x1, ..., tn/xn]
  Expr instantiate(const std::vector<Expr>& args) const;
  // name(x1, ..., xn)
  Expr head() const;
};

// Axioms, assumed theorems, defining equations and predicate definitions over
// a signature. Indices into the lists are insertion order and never change.
class ProofEnvironment {
 public:
  // Only the predicate Set with Set(x) <-> exists y. Elem(x,y).
  static ProofEnvironment default_environment();

  std::string name;
  Signature signature;
  std::vector<Expr> axioms;
  std::vector<Expr> theorems;
  std::vector<Expr> def_equations;
  std::vector<PredicateDefinition> definitions;
  std::string class_guard = "Set";

  Expr parse(const std::string& text) const;
  Expr parse_term(const std::string& text) const;
  std::string show(const Expr& e) const;   // pretty, root parentheses dropped
  std::string ascii(const Expr& e) const;  // input notation, re-parseable

  std::size_t add_axiom(const std::string& text);
  std::size_t add_theorem(const std::string& text);
  std::size_t add_theorem(const Expr& formula);
  std::size_t new_def_eq(const std::string& text);
  std::size_t new_def(const std::string& pred, const std::vector<std::string>& params,
                      const std::string& body_text);

  const PredicateDefinition* definition(const std::string& pred) const;

  // Checks a stored formula against the signature (symbols declared, arities
  // right). Used when loading files written by hand.
  void validate(const Expr& e) const;

  // Same axioms, defining equations, definitions and symbols, up to
  // alpha-equivalence and order. Theorems, pretty strings and the name are
  // not compared.
  bool compatible_with(const ProofEnvironment& other) const;

 private:
  void check_def_eq(const Expr& eq) const;
};

// Formulas whose atoms are only second-order variables and _|_.
bool is_logical_validity_shape(const Expr& e);

}  // namespace ndk
