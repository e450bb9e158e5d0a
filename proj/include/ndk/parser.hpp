#pragma once

#include <string_view>
#include <vector>

#include "ndk/expr.hpp"
#include "ndk/lexer.hpp"
#include "ndk/signature.hpp"

namespace ndk {

// ASCII input notation:
//
//   formula ::= chain
//   chain   ::= unit [ binop chain ]           (groups to the right)
//   unit    ::= "_|_" | "neg" unit | "(" chain ")"
//             | ("forall" | "exists" | "exists1") var "." chain
//             | "Elem" "(" term "," term ")" | pred "(" terms ")"
//             | term "=" term | name            (second-order variable)
//   term    ::= const | var | fun "(" terms ")" | "extension" var "." chain
//   binop   ::= "&" | "v" | "->" | "<->"
//
// An identifier in formula position that is not a declared predicate, not
// applied and not followed by "=" is a second-order variable. Undeclared
// identifiers in term position are first-order variables.
Expr parse_formula(const std::vector<Token>& tokens, const Signature& sig);
Expr parse_formula(std::string_view text, const Signature& sig);

Expr parse_term(const std::vector<Token>& tokens, const Signature& sig);
Expr parse_term(std::string_view text, const Signature& sig);

}  // namespace ndk
