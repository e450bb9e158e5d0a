#include "ndk/environment.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ndk/error.hpp"
#include "ndk/parser.hpp"
#include "ndk/printer.hpp"
#include "ndk/syntax.hpp"

namespace ndk {

Expr PredicateDefinition::instantiate(const std::vector<Expr>& args) const {
  if (args.size() != params.size())
    throw Error("definition of " + name + " takes " + std::to_string(params.size()) + " argument(s)");
  std::map<std::string, Expr> sub;
  for (std::size_t i = 0; i < params.size(); ++i) sub.emplace(params[i], args[i]);
  return substitute(body, sub);
}

Expr PredicateDefinition::head() const {
  std::vector<Expr> args;
  for (const auto& p : params) args.push_back(Expr::variable(p));
  return Expr::predicate(name, std::move(args));
}

ProofEnvironment ProofEnvironment::default_environment() {
  ProofEnvironment env;
  env.name = "default";
  env.signature.add_predicate("Set", 1, false);
  env.new_def("Set", {"x"}, "exists y. Elem(x,y)");
  return env;
}

Expr ProofEnvironment::parse(const std::string& text) const { return parse_formula(text, signature); }

Expr ProofEnvironment::parse_term(const std::string& text) const { return ndk::parse_term(text, signature); }

std::string ProofEnvironment::show(const Expr& e) const { return render_line(e, signature); }

std::string ProofEnvironment::ascii(const Expr& e) const {
  return render_line(e, signature, RenderMode::Ascii);
}

std::size_t ProofEnvironment::add_axiom(const std::string& text) {
  axioms.push_back(parse(text));
  return axioms.size() - 1;
}

std::size_t ProofEnvironment::add_theorem(const std::string& text) { return add_theorem(parse(text)); }

std::size_t ProofEnvironment::add_theorem(const Expr& formula) {
  if (!formula.is_formula()) throw EnvironmentError("a theorem must be a formula");
  validate(formula);
  theorems.push_back(formula);
  return theorems.size() - 1;
}

void ProofEnvironment::check_def_eq(const Expr& eq) const {
  if (eq.kind() != Kind::Equal) throw EnvironmentError("a defining equation must be an equation");
  const Expr& lhs = eq.lhs();
  if (lhs.kind() != Kind::Constant && lhs.kind() != Kind::Function)
    throw EnvironmentError("the left side of a defining equation must be a constant or a function applied to variables");
  std::set<std::string> params;
  for (const auto& a : lhs.args()) {
    if (a.kind() != Kind::Variable || !params.insert(a.name()).second)
      throw EnvironmentError("function arguments in a defining equation must be distinct variables");
  }
  for (const auto& v : free_vars(eq.rhs())) {
    if (!params.count(v)) throw EnvironmentError("variable '" + v + "' is free on the right but not a parameter");
  }
  for (const auto& other : def_equations) {
    if (other.lhs().name() == lhs.name())
      throw EnvironmentError("'" + lhs.name() + "' already has a defining equation");
  }
  // A symbol defined in terms of itself would make the equation an axiom.
  const auto names = all_names(eq.rhs());
  if (names.count(lhs.name())) throw EnvironmentError("'" + lhs.name() + "' occurs in its own definition");
}

std::size_t ProofEnvironment::new_def_eq(const std::string& text) {
  Expr eq = parse(text);
  check_def_eq(eq);
  def_equations.push_back(eq);
  return def_equations.size() - 1;
}

std::size_t ProofEnvironment::new_def(const std::string& pred, const std::vector<std::string>& params,
                                      const std::string& body_text) {
  const SymbolInfo* info = signature.predicate(pred);
  if (!info) throw EnvironmentError("'" + pred + "' is not a declared predicate");
  if (static_cast<std::size_t>(info->arity) != params.size())
    throw EnvironmentError("'" + pred + "' has arity " + std::to_string(info->arity));
  if (definition(pred)) throw EnvironmentError("'" + pred + "' is already defined");
  std::set<std::string> seen;
  for (const auto& p : params) {
    if (signature.kind_of(p) && !signature.is_variable(p))
      throw EnvironmentError("parameter '" + p + "' is a declared symbol");
    if (!seen.insert(p).second) throw EnvironmentError("parameter '" + p + "' repeated");
  }
  Expr body = parse(body_text);
  for (const auto& v : free_vars(body)) {
    if (!seen.count(v)) throw EnvironmentError("variable '" + v + "' is free in the definition of " + pred);
  }
  if (predicate_symbols(body).count(pred)) throw EnvironmentError("'" + pred + "' occurs in its own definition");
  definitions.push_back(PredicateDefinition{pred, params, body});
  return definitions.size() - 1;
}

const PredicateDefinition* ProofEnvironment::definition(const std::string& pred) const {
  for (const auto& d : definitions) {
    if (d.name == pred) return &d;
  }
  return nullptr;
}

void ProofEnvironment::validate(const Expr& e) const {
  auto bad = [](const std::string& msg) { throw EnvironmentError(msg); };
  switch (e.kind()) {
    case Kind::Variable:
    case Kind::Extension:
    case Kind::Forall:
    case Kind::Exists:
    case Kind::ExistsUnique:
      if (signature.kind_of(e.name()) && !signature.is_variable(e.name()))
        bad("'" + e.name() + "' is a declared symbol, not a variable");
      break;
    case Kind::Constant:
      if (!signature.is_constant(e.name())) bad("unknown constant '" + e.name() + "'");
      break;
    case Kind::Function: {
      const SymbolInfo* f = signature.function(e.name());
      if (!f || static_cast<std::size_t>(f->arity) != e.args().size()) bad("bad use of function '" + e.name() + "'");
      break;
    }
    case Kind::Predicate: {
      const SymbolInfo* p = signature.predicate(e.name());
      if (!p || static_cast<std::size_t>(p->arity) != e.args().size()) bad("bad use of predicate '" + e.name() + "'");
      break;
    }
    case Kind::SecondOrder:
      if (signature.kind_of(e.name())) bad("'" + e.name() + "' is a declared symbol");
      break;
    default:
      break;
  }
  for (const auto& a : e.args()) validate(a);
}

namespace {

// Every formula of a has an alpha-equal partner in b, and the sizes agree.
bool same_formulas(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& f : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j) {
      if (!used[j] && alpha_equal(f, b[j])) used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

bool same_definition(const PredicateDefinition& a, const PredicateDefinition& b) {
  if (a.name != b.name || a.params.size() != b.params.size()) return false;
  std::vector<Expr> args;
  for (const auto& p : a.params) args.push_back(Expr::variable(p));
  return alpha_equal(a.body, b.instantiate(args));
}

}  // namespace

bool ProofEnvironment::compatible_with(const ProofEnvironment& other) const {
  if (signature.constants() != other.signature.constants() ||
      signature.functions() != other.signature.functions() ||
      signature.predicates() != other.signature.predicates())
    return false;
  if (class_guard != other.class_guard) return false;
  if (!same_formulas(axioms, other.axioms) || !same_formulas(def_equations, other.def_equations)) return false;
  if (definitions.size() != other.definitions.size()) return false;
  for (const auto& d : definitions) {
    const PredicateDefinition* o = other.definition(d.name);
    if (!o || !same_definition(d, *o)) return false;
  }
  return true;
}

bool is_logical_validity_shape(const Expr& e) {
  switch (e.kind()) {
    case Kind::SecondOrder:
    case Kind::Bottom:
      return true;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return is_logical_validity_shape(e.lhs()) && is_logical_validity_shape(e.rhs());
    default:
      return false;
  }
}

}  // namespace ndk
