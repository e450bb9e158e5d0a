#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ndk {

// Terms and formulas share one immutable tree type. The kind decides the
// syntactic category; binders (Extension, Forall, Exists, ExistsUnique) keep
// the bound variable in name() and the body in args()[0].
enum class Kind : std::uint8_t {
  // terms
  Variable,
  Constant,
  Function,
  Extension,
  // formulas
  Predicate,
  Equal,
  Member,
  SecondOrder,
  Bottom,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
  ExistsUnique,
};

bool is_term_kind(Kind k);
bool is_binder_kind(Kind k);
bool is_connective_kind(Kind k);  // And, Or, Implies, Iff

class Expr {
 public:
  static Expr variable(std::string name);
  static Expr constant(std::string name);
  static Expr function(std::string symbol, std::vector<Expr> args);
  static Expr extension(std::string var, Expr body);

  static Expr predicate(std::string symbol, std::vector<Expr> args);
  static Expr equal(Expr lhs, Expr rhs);
  static Expr member(Expr lhs, Expr rhs);
  static Expr second_order(std::string name);
  static Expr bottom();
  static Expr conj(Expr lhs, Expr rhs);
  static Expr disj(Expr lhs, Expr rhs);
  static Expr implies(Expr lhs, Expr rhs);
  static Expr iff(Expr lhs, Expr rhs);
  static Expr negation(Expr operand);  // operand -> _|_
  static Expr forall(std::string var, Expr body);
  static Expr exists(std::string var, Expr body);
  static Expr exists_unique(std::string var, Expr body);

  // Generic constructor used by tree rewriting; validates arity of the node.
  static Expr make(Kind kind, std::string name, std::vector<Expr> args);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::vector<Expr>& args() const { return node_->args; }
  const Expr& arg(std::size_t i) const { return node_->args.at(i); }
  std::size_t hash() const { return node_->hash; }

  bool is_term() const { return is_term_kind(kind()); }
  bool is_formula() const { return !is_term(); }
  bool is_binder() const { return is_binder_kind(kind()); }
  bool is_negation() const;  // A -> _|_
  // Propositional atoms are second-order variables and _|_.
  bool is_atomic_proposition() const;

  const Expr& body() const { return arg(0); }  // binders
  const Expr& lhs() const { return arg(0); }
  const Expr& rhs() const { return arg(1); }

  // Structural (not alpha) equality.
  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }
  // Arbitrary but stable total order, consistent with ==.
  friend bool operator<(const Expr& a, const Expr& b);

  std::size_t size() const;  // node count
  bool node_ptr_equal(const Expr& o) const { return node_ == o.node_; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Expr> args;
    std::size_t hash;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

int compare(const Expr& a, const Expr& b);

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

// Child-index path from the root.
using Path = std::vector<std::size_t>;

const Expr& subexpr_at(const Expr& root, const Path& path);
Expr replace_subexpr(const Expr& root, const Path& path, const Expr& replacement,
                     std::size_t depth = 0);

}  // namespace ndk
