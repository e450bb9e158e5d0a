#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ndk/expr.hpp"

namespace ndk {

using NameSet = std::set<std::string>;

NameSet free_vars(const Expr& e);
bool occurs_free(const std::string& var, const Expr& e);

// Every identifier appearing anywhere in e: variables (free or bound), binder
// names, constants and symbols. Used to pick names that cannot clash.
NameSet all_names(const Expr& e);

// Smallest suffixed variant base0, base1, ... not in avoid.
std::string fresh_name(const std::string& base, const NameSet& avoid);

// e[t/var], renaming bound variables of e that would capture a free variable of t.
Expr substitute(const Expr& e, const std::string& var, const Expr& t);

// Simultaneous substitution e[t1/x1, ..., tn/xn].
Expr substitute(const Expr& e, const std::map<std::string, Expr>& subst);

// Equality up to consistent renaming of bound variables.
bool alpha_equal(const Expr& a, const Expr& b);

enum class Match { Syntactic, Alpha };

// Preorder (leftmost-outermost first) paths of subexpressions matching target.
std::vector<Path> find_occurrences(const Expr& e, const Expr& target,
                                   Match mode = Match::Syntactic);

// Replaces the occurrences of target selected by positions (indices into
// find_occurrences). Throws Error on an out-of-range index or when
// replacement and target belong to different syntactic categories.
Expr replace_at(const Expr& e, const Expr& target, const Expr& replacement,
                const std::vector<std::size_t>& positions, Match mode = Match::Syntactic);

// Variables bound by binders strictly above the node at path.
NameSet binders_above(const Expr& root, const Path& path);

// Paths of all nodes for which pred holds, in preorder.
template <typename Pred>
void collect_paths(const Expr& e, Pred&& pred, std::vector<Path>& out, Path& cur) {
  if (pred(e)) out.push_back(cur);
  for (std::size_t i = 0; i < e.args().size(); ++i) {
    cur.push_back(i);
    collect_paths(e.arg(i), pred, out, cur);
    cur.pop_back();
  }
}

template <typename Pred>
std::vector<Path> collect_paths(const Expr& e, Pred&& pred) {
  std::vector<Path> out;
  Path cur;
  collect_paths(e, pred, out, cur);
  return out;
}

// Names of second-order variables occurring in e.
NameSet second_order_vars(const Expr& e);
// Predicate symbols occurring in e.
NameSet predicate_symbols(const Expr& e);

}  // namespace ndk
