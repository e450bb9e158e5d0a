#include "ndk/parser.hpp"

#include <string>

#include "ndk/error.hpp"

namespace ndk {

namespace {

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, const Signature& sig) : toks_(tokens), sig_(sig) {}

  Expr formula() {
    Expr f = chain();
    finish();
    return f;
  }

  Expr term_only() {
    Expr t = term();
    finish();
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    if (i < toks_.size()) return toks_[i];
    end_ = Token{TokenKind::End, "", toks_.empty() ? 0 : toks_.back().offset + toks_.back().text.size()};
    return end_;
  }

  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    if (peek().kind == TokenKind::End && depth_ > 0)
      throw SyntaxError("unbalanced parenthesis: " + msg, peek().offset);
    throw SyntaxError(msg, peek().offset);
  }

  std::string describe(const Token& t) const {
    if (t.kind == TokenKind::End) return "end of input";
    return "'" + t.text + "'";
  }

  const Token& expect(TokenKind k) {
    if (peek().kind != k)
      fail(std::string("expected ") + token_kind_name(k) + " but found " + describe(peek()));
    return next();
  }

  void open() {
    expect(TokenKind::LParen);
    ++depth_;
  }
  void close() {
    expect(TokenKind::RParen);
    --depth_;
  }

  void finish() {
    if (peek().kind != TokenKind::End) fail("unexpected " + describe(peek()));
  }

  std::string bound_variable() {
    const Token& t = peek();
    if (t.kind != TokenKind::Ident) fail("expected a variable but found " + describe(t));
    if (sig_.kind_of(t.text) && !sig_.is_variable(t.text))
      fail("'" + t.text + "' is a declared symbol, not a variable");
    return next().text;
  }

  bool at_binop() const {
    const Token& t = peek();
    return t.kind == TokenKind::Amp || t.kind == TokenKind::Arrow || t.kind == TokenKind::Iff ||
           (t.kind == TokenKind::Ident && t.text == "v");
  }

  Expr chain() {
    Expr lhs = unit();
    if (!at_binop()) return lhs;
    const Token op = next();
    Expr rhs = chain();
    switch (op.kind) {
      case TokenKind::Amp: return Expr::conj(lhs, rhs);
      case TokenKind::Arrow: return Expr::implies(lhs, rhs);
      case TokenKind::Iff: return Expr::iff(lhs, rhs);
      default: return Expr::disj(lhs, rhs);
    }
  }

  std::vector<Expr> term_list() {
    std::vector<Expr> args;
    open();
    args.push_back(term());
    while (peek().kind == TokenKind::Comma) {
      next();
      args.push_back(term());
    }
    close();
    return args;
  }

  void check_arity(const std::string& name, int arity, std::size_t got, std::size_t offset) {
    if (static_cast<std::size_t>(arity) != got)
      throw SyntaxError("arity mismatch: '" + name + "' takes " + std::to_string(arity) +
                            " argument(s), got " + std::to_string(got),
                        offset);
  }

  Expr equation() {
    Expr lhs = term();
    expect(TokenKind::Equals);
    Expr rhs = term();
    return Expr::equal(lhs, rhs);
  }

  Expr unit() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Bottom:
        next();
        return Expr::bottom();
      case TokenKind::Neg:
        next();
        return Expr::negation(unit());
      case TokenKind::Forall:
      case TokenKind::Exists:
      case TokenKind::Exists1: {
        TokenKind k = next().kind;
        std::string var = bound_variable();
        expect(TokenKind::Dot);
        Expr body = chain();
        if (k == TokenKind::Forall) return Expr::forall(var, body);
        if (k == TokenKind::Exists) return Expr::exists(var, body);
        return Expr::exists_unique(var, body);
      }
      case TokenKind::LParen: {
        open();
        Expr f = chain();
        close();
        return f;
      }
      case TokenKind::Extension:
        return equation();
      case TokenKind::Ident:
        return identifier_unit();
      default:
        fail("expected a formula but found " + describe(t));
    }
  }

  Expr identifier_unit() {
    const Token& t = peek();
    const std::string name = t.text;
    const std::size_t offset = t.offset;
    if (name == kMembership) {
      next();
      auto args = term_list();
      check_arity(name, 2, args.size(), offset);
      return Expr::member(args[0], args[1]);
    }
    if (const SymbolInfo* p = sig_.predicate(name)) {
      next();
      auto args = term_list();
      check_arity(name, p->arity, args.size(), offset);
      return Expr::predicate(name, std::move(args));
    }
    const TokenKind after = peek(1).kind;
    if (after == TokenKind::LParen) {
      if (!sig_.function(name)) fail("unknown predicate or function '" + name + "'");
      return equation();
    }
    if (after == TokenKind::Equals) return equation();
    if (sig_.kind_of(name)) fail("expected '=' after term '" + name + "'");
    next();
    return Expr::second_order(name);
  }

  Expr term() {
    const Token& t = peek();
    if (t.kind == TokenKind::Extension) {
      next();
      std::string var = bound_variable();
      expect(TokenKind::Dot);
      return Expr::extension(var, chain());
    }
    if (t.kind != TokenKind::Ident) fail("expected a term but found " + describe(t));
    const std::string name = t.text;
    const std::size_t offset = t.offset;
    if (name == kMembership || sig_.predicate(name))
      fail("predicate '" + name + "' used as a term");
    next();
    if (peek().kind == TokenKind::LParen) {
      const SymbolInfo* f = sig_.function(name);
      if (!f) throw SyntaxError("unknown function '" + name + "'", offset);
      auto args = term_list();
      check_arity(name, f->arity, args.size(), offset);
      return Expr::function(name, std::move(args));
    }
    if (sig_.function(name)) throw SyntaxError("function '" + name + "' needs arguments", offset);
    if (sig_.is_constant(name)) return Expr::constant(name);
    return Expr::variable(name);
  }

  const std::vector<Token>& toks_;
  const Signature& sig_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  mutable Token end_{TokenKind::End, "", 0};
};

}  // namespace

Expr parse_formula(const std::vector<Token>& tokens, const Signature& sig) {
  return Parser(tokens, sig).formula();
}

Expr parse_formula(std::string_view text, const Signature& sig) {
  return parse_formula(tokenize(text), sig);
}

Expr parse_term(const std::vector<Token>& tokens, const Signature& sig) {
  return Parser(tokens, sig).term_only();
}

Expr parse_term(std::string_view text, const Signature& sig) {
  return parse_term(tokenize(text), sig);
}

}  // namespace ndk
