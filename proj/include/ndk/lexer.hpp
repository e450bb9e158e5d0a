#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ndk {

enum class TokenKind {
  Ident,
  LParen,
  RParen,
  Comma,
  Dot,
  Equals,
  Amp,      // &
  Arrow,    // ->
  Iff,      // <->
  Bottom,   // _|_
  Neg,      // neg
  Forall,   // forall
  Exists,   // exists
  Exists1,  // exists1
  Extension,
  End,  // never produced by tokenize; parsers use it past the last token
};

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset;

  friend bool operator==(const Token&, const Token&) = default;
};

// "v" is deliberately an identifier: the parser reads it as disjunction only
// in operator position, so it stays usable as a variable name.
std::vector<Token> tokenize(std::string_view text);

bool is_keyword(std::string_view word);
bool is_identifier(std::string_view word);

const char* token_kind_name(TokenKind k);

}  // namespace ndk
