#include "ndk/syntax.hpp"

#include <algorithm>

#include "ndk/error.hpp"

namespace ndk {

namespace {

void collect_free(const Expr& e, NameSet& bound, NameSet& out) {
  switch (e.kind()) {
    case Kind::Variable:
      if (!bound.count(e.name())) out.insert(e.name());
      return;
    case Kind::Extension:
    case Kind::Forall:
    case Kind::Exists:
    case Kind::ExistsUnique: {
      bool added = bound.insert(e.name()).second;
      collect_free(e.body(), bound, out);
      if (added) bound.erase(e.name());
      return;
    }
    default:
      for (const auto& a : e.args()) collect_free(a, bound, out);
  }
}

bool free_in(const std::string& var, const Expr& e) {
  switch (e.kind()) {
    case Kind::Variable:
      return e.name() == var;
    case Kind::Extension:
    case Kind::Forall:
    case Kind::Exists:
    case Kind::ExistsUnique:
      return e.name() != var && free_in(var, e.body());
    default:
      for (const auto& a : e.args())
        if (free_in(var, a)) return true;
      return false;
  }
}

void collect_names(const Expr& e, NameSet& out) {
  if (!e.name().empty()) out.insert(e.name());
  for (const auto& a : e.args()) collect_names(a, out);
}

Expr subst_impl(const Expr& e, const std::map<std::string, Expr>& sigma) {
  switch (e.kind()) {
    case Kind::Variable: {
      auto it = sigma.find(e.name());
      return it == sigma.end() ? e : it->second;
    }
    case Kind::Constant:
    case Kind::SecondOrder:
    case Kind::Bottom:
      return e;
    case Kind::Extension:
    case Kind::Forall:
    case Kind::Exists:
    case Kind::ExistsUnique: {
      // Only the substitutions that actually reach into the body matter.
      std::map<std::string, Expr> inner;
      for (const auto& [x, t] : sigma)
        if (x != e.name() && free_in(x, e.body())) inner.emplace(x, t);
      if (inner.empty()) return e;
      NameSet range_fv;
      for (const auto& [x, t] : inner) {
        auto fv = free_vars(t);
        range_fv.insert(fv.begin(), fv.end());
      }
      std::string var = e.name();
      Expr body = e.body();
      if (range_fv.count(var)) {
        NameSet avoid = range_fv;
        collect_names(body, avoid);
        for (const auto& [x, t] : inner) avoid.insert(x);
        std::string renamed = fresh_name(var, avoid);
        body = subst_impl(body, {{var, Expr::variable(renamed)}});
        var = renamed;
      }
      return Expr::make(e.kind(), var, {subst_impl(body, inner)});
    }
    default: {
      std::vector<Expr> args;
      args.reserve(e.args().size());
      bool changed = false;
      for (const auto& a : e.args()) {
        args.push_back(subst_impl(a, sigma));
        changed = changed || !args.back().node_ptr_equal(a);
      }
      return changed ? Expr::make(e.kind(), e.name(), std::move(args)) : e;
    }
  }
}

using Scope = std::vector<std::string>;

long lookup(const Scope& s, const std::string& name) {
  for (std::size_t i = s.size(); i-- > 0;)
    if (s[i] == name) return static_cast<long>(s.size() - i);
  return -1;
}

bool alpha_impl(const Expr& a, const Expr& b, Scope& sa, Scope& sb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Variable: {
      long ia = lookup(sa, a.name());
      long ib = lookup(sb, b.name());
      if (ia != ib) return false;
      return ia >= 0 || a.name() == b.name();
    }
    case Kind::Extension:
    case Kind::Forall:
    case Kind::Exists:
    case Kind::ExistsUnique: {
      sa.push_back(a.name());
      sb.push_back(b.name());
      bool r = alpha_impl(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return r;
    }
    default:
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_impl(a.arg(i), b.arg(i), sa, sb)) return false;
      return true;
  }
}

}  // namespace

NameSet free_vars(const Expr& e) {
  NameSet bound, out;
  collect_free(e, bound, out);
  return out;
}

bool occurs_free(const std::string& var, const Expr& e) { return free_in(var, e); }

NameSet all_names(const Expr& e) {
  NameSet out;
  collect_names(e, out);
  return out;
}

std::string fresh_name(const std::string& base, const NameSet& avoid) {
  for (std::size_t i = 0;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

Expr substitute(const Expr& e, const std::string& var, const Expr& t) {
  return subst_impl(e, {{var, t}});
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& subst) {
  for (const auto& [x, t] : subst)
    if (!t.is_term()) throw Error("substitution of a non-term for " + x);
  return subst_impl(e, subst);
}

bool alpha_equal(const Expr& a, const Expr& b) {
  if (a == b) return true;
  Scope sa, sb;
  return alpha_impl(a, b, sa, sb);
}

std::vector<Path> find_occurrences(const Expr& e, const Expr& target, Match mode) {
  if (mode == Match::Syntactic)
    return collect_paths(e, [&](const Expr& s) { return s == target; });
  return collect_paths(e, [&](const Expr& s) {
    return s.kind() == target.kind() && alpha_equal(s, target);
  });
}

Expr replace_at(const Expr& e, const Expr& target, const Expr& replacement,
                const std::vector<std::size_t>& positions, Match mode) {
  if (target.is_term() != replacement.is_term())
    throw Error("replacement and target belong to different syntactic categories");
  if (positions.empty()) return e;
  auto paths = find_occurrences(e, target, mode);
  std::vector<std::size_t> sorted = positions;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("duplicate position in position list");
  if (sorted.back() >= paths.size())
    throw Error("position " + std::to_string(sorted.back()) + " out of range: " +
                std::to_string(paths.size()) + " occurrence(s)");
  Expr out = e;
  // Occurrences of one expression never nest, so replacing back to front
  // keeps the remaining paths valid.
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it)
    out = replace_subexpr(out, paths[*it], replacement);
  return out;
}

NameSet binders_above(const Expr& root, const Path& path) {
  NameSet out;
  const Expr* cur = &root;
  for (auto i : path) {
    if (cur->is_binder()) out.insert(cur->name());
    cur = &cur->arg(i);
  }
  return out;
}

NameSet second_order_vars(const Expr& e) {
  NameSet out;
  for (const auto& p : collect_paths(e, [](const Expr& s) { return s.kind() == Kind::SecondOrder; }))
    out.insert(subexpr_at(e, p).name());
  return out;
}

NameSet predicate_symbols(const Expr& e) {
  NameSet out;
  for (const auto& p : collect_paths(e, [](const Expr& s) { return s.kind() == Kind::Predicate; }))
    out.insert(subexpr_at(e, p).name());
  return out;
}

}  // namespace ndk
