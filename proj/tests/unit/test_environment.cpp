#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "ndk/environment.hpp"
#include "ndk/error.hpp"
#include "ndk/syntax.hpp"
#include "ndk/theorem_file.hpp"

using namespace ndk;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("default environment") {
  ProofEnvironment env = ProofEnvironment::default_environment();
  REQUIRE(env.definitions.size() == 1);
  CHECK(env.definitions[0].name == "Set");
  CHECK(env.show(env.definitions[0].body) == "∃y.(x ε y)");
  CHECK(env.class_guard == "Set");
  CHECK(env.axioms.empty());
  CHECK(env.theorems.empty());
}

TEST_CASE("declarations") {
  Signature sig;
  sig.add_constant("c");
  sig.add_function("f", 2, true);
  sig.add_predicate("P", 1, false);
  sig.add_variable("v0");
  CHECK(sig.kind_of("c") == SymbolKind::Constant);
  CHECK(sig.kind_of("f") == SymbolKind::Function);
  CHECK(sig.kind_of("P") == SymbolKind::Predicate);
  CHECK(sig.kind_of("v0") == SymbolKind::Variable);
  CHECK_FALSE(sig.kind_of("g"));
  CHECK_THROWS_WITH_AS(sig.add_constant("c"), "'c' is already declared", EnvironmentError);
  CHECK_THROWS_WITH_AS(sig.add_predicate("f", 1, false), "'f' is already declared", EnvironmentError);
  CHECK_THROWS_AS(sig.add_constant("Elem"), EnvironmentError);
  CHECK_THROWS_AS(sig.add_constant("forall"), EnvironmentError);
  CHECK_THROWS_AS(sig.add_constant("a b"), EnvironmentError);
  CHECK_THROWS_WITH_AS(sig.add_function("g", 0, false), "function arity must be at least 1", EnvironmentError);
  CHECK_THROWS_WITH_AS(sig.add_function("g", 3, true), "infix display needs arity 2", EnvironmentError);
  CHECK_THROWS_WITH_AS(sig.set_pretty("h", "H"), "pretty form for undeclared symbol 'h'", EnvironmentError);
  // a failed declaration leaves nothing behind
  CHECK_FALSE(sig.kind_of("g"));
}

TEST_CASE("pretty forms reach the printer") {
  ProofEnvironment env = ProofEnvironment::default_environment();
  env.signature.add_function("cup", 2, true);
  env.signature.set_pretty("cup", "∪");
  env.signature.add_function("pair", 2, false);
  env.signature.set_pretty("pair", "{%1,%2}");
  env.signature.add_constant("empty");
  env.signature.set_pretty("empty", "∅");
  Expr f = env.parse("Elem(cup(a, empty), pair(a,b))");
  CHECK(env.show(f) == "(a ∪ ∅) ε {a,b}");
  CHECK(alpha_equal(env.parse(env.ascii(f)), f));
}

TEST_CASE("defining equations") {
  ProofEnvironment env = fixtures::km();
  REQUIRE(env.def_equations.size() == 26);
  CHECK(env.show(env.def_equations[23]) == "suc x = (x ∪ {x})");
  ProofEnvironment e = ProofEnvironment::default_environment();
  e.signature.add_function("g", 1, false);
  e.signature.add_function("h", 2, false);
  e.signature.add_constant("k");
  CHECK(e.new_def_eq("g(x) = extension y. Elem(y,x)") == 0);
  CHECK_THROWS_WITH_AS(e.new_def_eq("g(x) = x"), "'g' already has a defining equation", EnvironmentError);
  CHECK_THROWS_WITH_AS(e.new_def_eq("Elem(x,y)"), "a defining equation must be an equation", EnvironmentError);
  CHECK_THROWS_WITH_AS(e.new_def_eq("h(x,x) = x"), "function arguments in a defining equation must be distinct variables",
                       EnvironmentError);
  CHECK_THROWS_WITH_AS(e.new_def_eq("h(x,y) = z"), "variable 'z' is free on the right but not a parameter",
                       EnvironmentError);
  CHECK_THROWS_WITH_AS(e.new_def_eq("k = g(k)"), "'k' occurs in its own definition", EnvironmentError);
  CHECK_THROWS_AS(e.new_def_eq("x = k"), EnvironmentError);
  CHECK(e.def_equations.size() == 1);
}

TEST_CASE("predicate definitions") {
  ProofEnvironment env = ProofEnvironment::default_environment();
  env.signature.add_predicate("Sub", 2, true);
  env.signature.add_constant("k");
  CHECK(env.new_def("Sub", {"x", "y"}, "forall z. (Elem(z,x) -> Elem(z,y))") == 1);
  const PredicateDefinition* d = env.definition("Sub");
  REQUIRE(d);
  CHECK(env.show(d->head()) == "x Sub y");
  CHECK(env.show(d->instantiate({env.parse_term("z"), env.parse_term("y")})) == "∀z0.((z0 ε z) -> (z0 ε y))");
  CHECK_THROWS_AS(d->instantiate({env.parse_term("a")}), Error);
  CHECK_THROWS_WITH_AS(env.new_def("Sub", {"x", "y"}, "Elem(x,y)"), "'Sub' is already defined", EnvironmentError);
  CHECK_THROWS_WITH_AS(env.new_def("Q", {"x"}, "Elem(x,x)"), "'Q' is not a declared predicate", EnvironmentError);
  env.signature.add_predicate("Q", 1, false);
  CHECK_THROWS_WITH_AS(env.new_def("Q", {"x", "y"}, "Elem(x,y)"), "'Q' has arity 1", EnvironmentError);
  CHECK_THROWS_WITH_AS(env.new_def("Q", {"k"}, "Elem(k,k)"), "parameter 'k' is a declared symbol", EnvironmentError);
  CHECK_THROWS_WITH_AS(env.new_def("Q", {"x"}, "Elem(x,y)"), "variable 'y' is free in the definition of Q",
                       EnvironmentError);
  CHECK_THROWS_WITH_AS(env.new_def("Q", {"x"}, "neg Q(x)"), "'Q' occurs in its own definition", EnvironmentError);
  CHECK_FALSE(env.definition("Q"));
}

TEST_CASE("validate catches symbols used at the wrong arity") {
  ProofEnvironment env = fixtures::km();
  CHECK_NOTHROW(env.validate(env.parse("Subset(a,b)")));
  Expr bad = Expr::predicate("Subset", {Expr::variable("a")});
  CHECK_THROWS_AS(env.validate(bad), EnvironmentError);
  CHECK_THROWS_AS(env.add_theorem(bad), EnvironmentError);
}

TEST_CASE("compatibility") {
  ProofEnvironment a = fixtures::km();
  ProofEnvironment b = fixtures::km();
  b.add_theorem("(A -> A)");
  b.name = "other";
  CHECK(a.compatible_with(b));
  b.add_axiom("Set(x)");
  CHECK_FALSE(a.compatible_with(b));
  CHECK_FALSE(a.compatible_with(ProofEnvironment::default_environment()));
  // bound names do not matter
  ProofEnvironment c = ProofEnvironment::default_environment();
  ProofEnvironment d = ProofEnvironment::default_environment();
  c.add_axiom("forall u. Elem(u,u)");
  d.add_axiom("forall w. Elem(w,w)");
  CHECK(c.compatible_with(d));
}

TEST_CASE("validity shapes") {
  ProofEnvironment env = fixtures::km();
  CHECK(is_logical_validity_shape(env.parse("(A v neg A)")));
  CHECK(is_logical_validity_shape(env.parse("(_|_ -> B)")));
  CHECK_FALSE(is_logical_validity_shape(env.parse("Set(x)")));
  CHECK_FALSE(is_logical_validity_shape(env.parse("forall x. A")));
}

TEST_CASE("save, load and save again is byte-identical") {
  fixtures::TempDir tmp;
  for (const char* theory : {"kelley-morse", "logic", "category", "z2"}) {
    for (const auto& entry : std::filesystem::directory_iterator(fixtures::theory_dir(theory))) {
      INFO(entry.path().string());
      TheoremRecord rec = read_theorem_file(entry.path());
      auto out = tmp.path / entry.path().filename();
      write_theorem_file(out, rec);
      CHECK(slurp(out) == slurp(entry.path()));
      TheoremRecord again = read_theorem_file(out);
      CHECK(again.log == rec.log);
      CHECK(again.env.signature == rec.env.signature);
      CHECK(again.env.compatible_with(rec.env));
      CHECK(again.env.theorems.size() == rec.env.theorems.size());
    }
  }
}

TEST_CASE("theorem file errors") {
  fixtures::TempDir tmp;
  CHECK_THROWS_AS(read_theorem_file(tmp.path / "none.json"), EnvironmentError);
  {
    std::ofstream(tmp.path / "bad.json") << "{ not json";
  }
  CHECK_THROWS_WITH_AS(read_theorem_file(tmp.path / "bad.json"), doctest::Contains("malformed theorem file"),
                       EnvironmentError);
  {
    std::ofstream(tmp.path / "fmt.json") << R"({"format": "other/9"})";
  }
  CHECK_THROWS_AS(read_theorem_file(tmp.path / "fmt.json"), EnvironmentError);
  CHECK_THROWS_AS(record_from_json(nlohmann::json::array()), EnvironmentError);
  CHECK_THROWS_WITH_AS(theorem_path(tmp.path, "../escape"), "invalid theorem name '../escape'", EnvironmentError);
  CHECK_THROWS_AS(theorem_path(tmp.path, ""), EnvironmentError);
}

TEST_CASE("signature json round trip") {
  Signature sig = fixtures::record("category", "Category").env.signature;
  CHECK(signature_from_json(signature_to_json(sig)) == sig);
  CHECK(*sig.pretty("Arrow") == "[%1: %2 → %3|%4]");
}
