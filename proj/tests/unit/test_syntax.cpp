#include "doctest.h"

#include "ndk/error.hpp"
#include "ndk/lexer.hpp"
#include "ndk/parser.hpp"
#include "ndk/printer.hpp"
#include "ndk/syntax.hpp"

using namespace ndk;

namespace {

Signature km_like() {
  Signature s;
  s.add_function("union", 2, true);
  s.set_pretty("union", "∪");
  s.add_function("intersection", 2, true);
  s.set_pretty("intersection", "∩");
  s.add_predicate("Set", 1, false);
  s.add_predicate("Subset", 2, true);
  s.set_pretty("Subset", "⊂");
  s.add_function("app", 2, false);
  s.set_pretty("app", "(%1'%2)");
  s.add_constant("rus");
  return s;
}

Expr f(const std::string& text, const Signature& s = Signature()) { return parse_formula(text, s); }

}  // namespace

TEST_CASE("tokenize membership with nested function") {
  auto toks = tokenize("Elem(z,union(x,y))");
  std::vector<TokenKind> kinds;
  for (auto& t : toks) kinds.push_back(t.kind);
  using K = TokenKind;
  CHECK(kinds == std::vector<K>{K::Ident, K::LParen, K::Ident, K::Comma, K::Ident, K::LParen, K::Ident,
                                K::Comma, K::Ident, K::RParen, K::RParen});
  CHECK(toks[0].text == "Elem");
  CHECK(toks[4].text == "union");
  CHECK(toks[4].offset == 7);
}

TEST_CASE("tokenize edge cases") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("   ").empty());
  try {
    tokenize("z § x");
    FAIL("expected lexical error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 2);
  }
  auto toks = tokenize("A->B<->neg C _|_ 1-to-1");
  CHECK(toks.size() == 8);
  CHECK(toks[1].kind == TokenKind::Arrow);
  CHECK(toks[3].kind == TokenKind::Iff);
  CHECK(toks[4].kind == TokenKind::Neg);
  CHECK(toks[6].kind == TokenKind::Bottom);
  CHECK(toks[7].text == "1-to-1");
}

TEST_CASE("parse connectives and negation") {
  Expr A = Expr::second_order("A"), B = Expr::second_order("B");
  CHECK(f("(A v B) -> (B v A)") == Expr::implies(Expr::disj(A, B), Expr::disj(B, A)));
  CHECK(f("neg A") == Expr::implies(A, Expr::bottom()));
  Expr C = Expr::second_order("C");
  CHECK(f("A & B & C") == Expr::conj(A, Expr::conj(B, C)));
  CHECK(f("A & B v C") == Expr::conj(A, Expr::disj(B, C)));
  CHECK(f("neg A & B") == Expr::conj(Expr::negation(A), B));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_WITH_AS(f("Elem(z"), doctest::Contains("unbalanced parenthesis"), SyntaxError);
  CHECK_THROWS_AS(f("A &"), SyntaxError);
  CHECK_THROWS_AS(f("Set(x,y)", km_like()), SyntaxError);
  CHECK_THROWS_AS(f("Elem(z, union(x))", km_like()), SyntaxError);
  CHECK_THROWS_AS(f("Elem(z, foo(x))", km_like()), SyntaxError);
  CHECK_THROWS_AS(f("forall rus. A", km_like()), SyntaxError);
  CHECK_THROWS_AS(f("(A B)"), SyntaxError);
}

TEST_CASE("v is a variable outside operator position") {
  Expr e = f("forall v. Elem(v, x) v A");
  CHECK(e.kind() == Kind::Forall);
  CHECK(e.name() == "v");
  CHECK(e.body().kind() == Kind::Or);
}

TEST_CASE("render pretty and ascii") {
  Signature s = km_like();
  Expr m = f("Elem(z,union(x,y))", s);
  CHECK(render(m, s) == "(z ε (x ∪ y))");
  CHECK(render_line(m, s) == "z ε (x ∪ y)");
  CHECK(render(f("neg A"), s) == "¬A");
  CHECK(render(f("neg A"), s, RenderMode::Ascii) == "neg A");
  CHECK(render(Expr::bottom(), s) == "_|_");
  CHECK(render_line(f("(neg A & neg neg A)")) == "¬A & ¬¬A");
  CHECK(render_line(f("forall y.(Elem(y,x) -> Subset(y,x))", s), s) == "∀y.((y ε x) -> (y ⊂ x))");
  CHECK(render_line(f("union(x,y) = extension z. (Elem(z,x) v Elem(z,y))", s), s) ==
        "(x ∪ y) = {z: ((z ε x) v (z ε y))}");
  CHECK(render_line(f("Elem(app(f,x), y)", s), s) == "(f'x) ε y");
  CHECK(render_line(f("exists1 x. Set(x)", s), s) == "∃¹x.Set(x)");
}

TEST_CASE("free variables") {
  Signature s;
  CHECK(free_vars(parse_term("extension x. Elem(x,y)", s)) == NameSet{"y"});
  CHECK(free_vars(f("A")).empty());
  CHECK(free_vars(f("forall x. Elem(x, y) & Elem(z, x)")) == NameSet{"y", "z"});
}

TEST_CASE("substitution") {
  Signature s = km_like();
  Expr t = parse_term("union(a,b)", s);
  CHECK(render(substitute(f("Elem(x,y)", s), "x", t), s) == "((a ∪ b) ε y)");
  Expr r = substitute(f("forall y. Elem(x,y)"), "x", Expr::variable("y"));
  CHECK(r.kind() == Kind::Forall);
  CHECK(r.name() != "y");
  CHECK(r.body() == Expr::member(Expr::variable("y"), Expr::variable(r.name())));
  CHECK(r.name() == "y0");
  CHECK(substitute(f("Elem(z,x)"), "z", Expr::variable("w")) == f("Elem(w,x)"));
  // no capture renaming when the substitution does not reach the body
  Expr q = f("forall y. Elem(y,y)");
  CHECK(substitute(q, "x", Expr::variable("y")) == q);
}

TEST_CASE("alpha equality") {
  CHECK(alpha_equal(f("forall x. Elem(x,y)"), f("forall w. Elem(w,y)")));
  Signature s = km_like();
  CHECK(alpha_equal(parse_term("extension x. neg Elem(x,x)", s), parse_term("extension z. neg Elem(z,z)", s)));
  CHECK_FALSE(alpha_equal(f("forall x. Elem(x,y)"), f("forall x. Elem(x,z)")));
  CHECK_FALSE(alpha_equal(f("forall x. forall y. Elem(x,y)"), f("forall y. forall x. Elem(x,y)")));
  CHECK(alpha_equal(f("forall x. forall y. Elem(x,y)"), f("forall y. forall x. Elem(y,x)")));
  CHECK_FALSE(alpha_equal(f("forall x. Elem(x,y)"), f("forall y. Elem(y,y)")));
}

TEST_CASE("find occurrences") {
  Signature s = km_like();
  Expr e = f("Elem(z,union(x,y))", s);
  CHECK(find_occurrences(e, parse_term("union(x,y)", s)).size() == 1);
  Expr e2 = f("union(x,x) = x", s);
  auto occ = find_occurrences(e2, Expr::variable("x"));
  CHECK(occ.size() == 3);
  CHECK(occ[0] == Path{0, 0});
  CHECK(occ[1] == Path{0, 1});
  CHECK(occ[2] == Path{1});
  CHECK(find_occurrences(e2, e2) == std::vector<Path>{Path{}});
}

TEST_CASE("replace at positions") {
  Signature s = km_like();
  Expr e = f("Elem(z,union(x,y))", s);
  Expr target = parse_term("union(x,y)", s);
  Expr repl = parse_term("extension z. (Elem(z,x) v Elem(z,y))", s);
  CHECK(render_line(replace_at(e, target, repl, {0}), s) == "z ε {z: ((z ε x) v (z ε y))}");
  CHECK(replace_at(e, target, repl, {}) == e);
  CHECK_THROWS_WITH_AS(replace_at(e, target, repl, {5}), doctest::Contains("out of range"), Error);
  CHECK_THROWS_AS(replace_at(e, target, f("A"), {0}), Error);
}

TEST_CASE("ascii rendering keeps extension bodies closed") {
  Signature s = km_like();
  Expr e = Expr::equal(Expr::extension("z", Expr::second_order("A")), Expr::variable("y"));
  std::string a = render(e, s, RenderMode::Ascii);
  CHECK(alpha_equal(parse_formula(a, s), e));
}
