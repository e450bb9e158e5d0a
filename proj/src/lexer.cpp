#include "ndk/lexer.hpp"

#include <cctype>

#include "ndk/error.hpp"

namespace ndk {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

TokenKind keyword_kind(std::string_view w) {
  if (w == "neg") return TokenKind::Neg;
  if (w == "forall") return TokenKind::Forall;
  if (w == "exists") return TokenKind::Exists;
  if (w == "exists1") return TokenKind::Exists1;
  if (w == "extension") return TokenKind::Extension;
  return TokenKind::Ident;
}

}  // namespace

bool is_keyword(std::string_view word) { return keyword_kind(word) != TokenKind::Ident; }

bool is_identifier(std::string_view word) {
  if (word.empty() || is_keyword(word)) return false;
  try {
    auto toks = tokenize(word);
    return toks.size() == 1 && toks[0].kind == TokenKind::Ident && toks[0].text == word;
  } catch (const SyntaxError&) {
    return false;
  }
}

const char* token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Equals: return "'='";
    case TokenKind::Amp: return "'&'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::Iff: return "'<->'";
    case TokenKind::Bottom: return "'_|_'";
    case TokenKind::Neg: return "'neg'";
    case TokenKind::Forall: return "'forall'";
    case TokenKind::Exists: return "'exists'";
    case TokenKind::Exists1: return "'exists1'";
    case TokenKind::Extension: return "'extension'";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](TokenKind k, std::size_t len) {
    out.push_back({k, std::string(text.substr(i, len)), i});
    i += len;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (text.substr(i, 3) == "_|_") {
      push(TokenKind::Bottom, 3);
    } else if (text.substr(i, 3) == "<->") {
      push(TokenKind::Iff, 3);
    } else if (text.substr(i, 2) == "->") {
      push(TokenKind::Arrow, 2);
    } else if (c == '(') {
      push(TokenKind::LParen, 1);
    } else if (c == ')') {
      push(TokenKind::RParen, 1);
    } else if (c == ',') {
      push(TokenKind::Comma, 1);
    } else if (c == '.') {
      push(TokenKind::Dot, 1);
    } else if (c == '=') {
      push(TokenKind::Equals, 1);
    } else if (c == '&') {
      push(TokenKind::Amp, 1);
    } else if (ident_char(c)) {
      // Identifiers may contain inner hyphens ("1-to-1") but never "->".
      std::size_t j = i;
      while (j < text.size()) {
        if (ident_char(text[j])) {
          ++j;
        } else if (text[j] == '-' && j + 1 < text.size() && ident_char(text[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      std::string word(text.substr(i, j - i));
      out.push_back({keyword_kind(word), word, i});
      i = j;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
  }
  return out;
}

}  // namespace ndk
