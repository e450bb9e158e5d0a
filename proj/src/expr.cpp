#include "ndk/expr.hpp"

#include <functional>

#include "ndk/error.hpp"

namespace ndk {

bool is_term_kind(Kind k) {
  return k == Kind::Variable || k == Kind::Constant || k == Kind::Function ||
         k == Kind::Extension;
}

bool is_binder_kind(Kind k) {
  return k == Kind::Extension || k == Kind::Forall || k == Kind::Exists ||
         k == Kind::ExistsUnique;
}

bool is_connective_kind(Kind k) {
  return k == Kind::And || k == Kind::Or || k == Kind::Implies || k == Kind::Iff;
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

void check_shape(Kind kind, const std::string& name, const std::vector<Expr>& args) {
  auto want = [&](std::size_t n) {
    if (args.size() != n) throw Error("malformed expression node");
  };
  auto want_term = [&](const Expr& e) {
    if (!e.is_term()) throw Error("expected a term argument");
  };
  auto want_formula = [&](const Expr& e) {
    if (!e.is_formula()) throw Error("expected a formula argument");
  };
  switch (kind) {
    case Kind::Variable:
    case Kind::Constant:
    case Kind::SecondOrder:
      want(0);
      if (name.empty()) throw Error("empty identifier");
      break;
    case Kind::Bottom:
      want(0);
      break;
    case Kind::Function:
    case Kind::Predicate:
      if (args.empty()) throw Error("application needs at least one argument");
      for (const auto& a : args) want_term(a);
      break;
    case Kind::Equal:
    case Kind::Member:
      want(2);
      want_term(args[0]);
      want_term(args[1]);
      break;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      want(2);
      want_formula(args[0]);
      want_formula(args[1]);
      break;
    case Kind::Extension:
    case Kind::Forall:
    case Kind::Exists:
    case Kind::ExistsUnique:
      want(1);
      want_formula(args[0]);
      if (name.empty()) throw Error("binder without variable");
      break;
  }
}

}  // namespace

Expr Expr::make(Kind kind, std::string name, std::vector<Expr> args) {
  check_shape(kind, name, args);
  std::size_t h = mix(static_cast<std::size_t>(kind), std::hash<std::string>{}(name));
  for (const auto& a : args) h = mix(h, a.hash());
  return Expr(std::make_shared<const Node>(Node{kind, std::move(name), std::move(args), h}));
}

Expr Expr::variable(std::string name) { return make(Kind::Variable, std::move(name), {}); }
Expr Expr::constant(std::string name) { return make(Kind::Constant, std::move(name), {}); }
Expr Expr::function(std::string symbol, std::vector<Expr> args) {
  return make(Kind::Function, std::move(symbol), std::move(args));
}
Expr Expr::extension(std::string var, Expr body) {
  return make(Kind::Extension, std::move(var), {std::move(body)});
}
Expr Expr::predicate(std::string symbol, std::vector<Expr> args) {
  return make(Kind::Predicate, std::move(symbol), std::move(args));
}
Expr Expr::equal(Expr lhs, Expr rhs) { return make(Kind::Equal, "", {std::move(lhs), std::move(rhs)}); }
Expr Expr::member(Expr lhs, Expr rhs) { return make(Kind::Member, "", {std::move(lhs), std::move(rhs)}); }
Expr Expr::second_order(std::string name) { return make(Kind::SecondOrder, std::move(name), {}); }
Expr Expr::bottom() {
  static const Expr b = make(Kind::Bottom, "", {});
  return b;
}
Expr Expr::conj(Expr lhs, Expr rhs) { return make(Kind::And, "", {std::move(lhs), std::move(rhs)}); }
Expr Expr::disj(Expr lhs, Expr rhs) { return make(Kind::Or, "", {std::move(lhs), std::move(rhs)}); }
Expr Expr::implies(Expr lhs, Expr rhs) {
  return make(Kind::Implies, "", {std::move(lhs), std::move(rhs)});
}
Expr Expr::iff(Expr lhs, Expr rhs) { return make(Kind::Iff, "", {std::move(lhs), std::move(rhs)}); }
Expr Expr::negation(Expr operand) { return implies(std::move(operand), bottom()); }
Expr Expr::forall(std::string var, Expr body) {
  return make(Kind::Forall, std::move(var), {std::move(body)});
}
Expr Expr::exists(std::string var, Expr body) {
  return make(Kind::Exists, std::move(var), {std::move(body)});
}
Expr Expr::exists_unique(std::string var, Expr body) {
  return make(Kind::ExistsUnique, std::move(var), {std::move(body)});
}

bool Expr::is_negation() const {
  return kind() == Kind::Implies && rhs().kind() == Kind::Bottom;
}

bool Expr::is_atomic_proposition() const {
  return kind() == Kind::SecondOrder || kind() == Kind::Bottom;
}

std::size_t Expr::size() const {
  std::size_t n = 1;
  for (const auto& a : args()) n += a.size();
  return n;
}

int compare(const Expr& a, const Expr& b) {
  if (a.node_ptr_equal(b)) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.args().size() != b.args().size()) return a.args().size() < b.args().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (int c = compare(a.arg(i), b.arg(i)); c != 0) return c;
  }
  return 0;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

const Expr& subexpr_at(const Expr& root, const Path& path) {
  const Expr* cur = &root;
  for (auto i : path) cur = &cur->arg(i);
  return *cur;
}

Expr replace_subexpr(const Expr& root, const Path& path, const Expr& replacement,
                     std::size_t depth) {
  if (depth == path.size()) return replacement;
  auto args = root.args();
  args.at(path[depth]) = replace_subexpr(root.arg(path[depth]), path, replacement, depth + 1);
  return Expr::make(root.kind(), root.name(), std::move(args));
}

}  // namespace ndk
