#include "ndk/proof.hpp"

#include <algorithm>
#include <map>

#include "ndk/error.hpp"
#include "ndk/lexer.hpp"
#include "ndk/syntax.hpp"

namespace ndk {

using nlohmann::json;

const char* param_kind_name(ParamKind k) {
  switch (k) {
    case ParamKind::Line: return "line";
    case ParamKind::Formula: return "formula";
    case ParamKind::Term: return "term";
    case ParamKind::Variable: return "variable";
    case ParamKind::Terms: return "terms";
    case ParamKind::Positions: return "positions";
    case ParamKind::Index: return "index";
    case ParamKind::Predicate: return "predicate";
    case ParamKind::SecondOrder: return "secondOrder";
  }
  return "?";
}

const std::vector<RuleSpec>& rule_table() {
  using K = ParamKind;
  static const std::vector<RuleSpec> table = {
      {"Hyp", {{"formula", K::Formula}}, "structural", "assume a formula"},
      {"AndInt", {{"left", K::Line}, {"right", K::Line}}, "logical", "A, B gives A & B"},
      {"AndElimL", {{"conj", K::Line}}, "logical", "A & B gives A"},
      {"AndElimR", {{"conj", K::Line}}, "logical", "A & B gives B"},
      {"ImpInt", {{"conclusion", K::Line}, {"hypothesis", K::Line}}, "logical",
       "B under hypothesis A gives A -> B, discharging A"},
      {"ImpElim", {{"antecedent", K::Line}, {"implication", K::Line}}, "logical", "A and A -> B give B"},
      {"OrIntL", {{"line", K::Line}, {"formula", K::Formula}}, "logical", "A gives F v A"},
      {"OrIntR", {{"line", K::Line}, {"formula", K::Formula}}, "logical", "A gives A v F"},
      {"OrElim",
       {{"disjunction", K::Line}, {"leftHyp", K::Line}, {"leftCon", K::Line}, {"rightHyp", K::Line},
        {"rightCon", K::Line}},
       "logical", "case analysis on A v B, discharging both case hypotheses"},
      {"ForallInt", {{"line", K::Line}, {"var", K::Variable}, {"newVar", K::Variable}}, "logical",
       "A gives forall x. A[x/y]; y must not occur free in a live hypothesis"},
      {"ForallElim", {{"line", K::Line}, {"term", K::Term}}, "logical", "forall x. A gives A[t/x]"},
      {"ExistsInt", {{"line", K::Line}, {"term", K::Term}, {"newVar", K::Variable}, {"positions", K::Positions}},
       "logical", "abstract occurrences of t into exists x"},
      {"ExistsElim", {{"exists", K::Line}, {"instance", K::Line}, {"conclusion", K::Line}, {"var", K::Variable}},
       "logical", "from exists x. A and C under A[y/x] conclude C, discharging the instance"},
      {"AbsI", {{"bottom", K::Line}, {"formula", K::Formula}}, "logical", "_|_ gives any formula"},
      {"AbsC", {{"negHyp", K::Line}, {"bottom", K::Line}}, "logical",
       "_|_ under hypothesis neg A gives A, discharging neg A"},
      {"ClassElim", {{"membership", K::Line}}, "class", "t in {x: A} gives Guard(t) & A[t/x]"},
      {"ClassInt", {{"line", K::Line}, {"newVar", K::Variable}}, "class", "Guard(t) & A[t/x] gives t in {x: A}"},
      {"Identity", {{"term", K::Term}}, "equality", "t = t"},
      {"Symmetry", {{"equation", K::Line}}, "equality", "s = t gives t = s"},
      {"EqualitySub", {{"line", K::Line}, {"equation", K::Line}, {"positions", K::Positions}}, "equality",
       "rewrite chosen occurrences of t by s using t = s"},
      {"PolySub", {{"line", K::Line}, {"var", K::SecondOrder}, {"formula", K::Formula}}, "second-order",
       "substitute a formula for every occurrence of a second-order variable"},
      {"PredSub",
       {{"line", K::Line}, {"predicate", K::Predicate}, {"params", K::Terms}, {"formula", K::Formula},
        {"positions", K::Positions}},
       "second-order", "substitute a formula for an undefined predicate"},
      {"AxInt", {{"index", K::Index}}, "environment", "introduce an axiom"},
      {"TheoremInt", {{"index", K::Index}}, "environment", "introduce an assumed theorem"},
      {"DefEqInt", {{"index", K::Index}}, "environment", "introduce a defining equation"},
      {"DefExp", {{"line", K::Line}, {"predicate", K::Predicate}, {"positions", K::Positions}}, "environment",
       "unfold chosen occurrences of a defined predicate"},
      {"DefSub", {{"line", K::Line}, {"predicate", K::Predicate}, {"args", K::Terms}, {"positions", K::Positions}},
       "environment", "fold chosen occurrences of a definition body"},
      {"EquivConst", {{"line", K::Line}}, "equivalence", "(A -> B) & (B -> A) gives A <-> B"},
      {"EquivExp", {{"line", K::Line}}, "equivalence", "A <-> B gives (A -> B) & (B -> A)"},
      {"EquivJoin", {{"forward", K::Line}, {"backward", K::Line}}, "derived", "A -> B and B -> A give A <-> B"},
      {"EquivLeft", {{"line", K::Line}}, "derived", "A <-> B gives A -> B"},
      {"EquivRight", {{"line", K::Line}}, "derived", "A <-> B gives B -> A"},
      {"FreeSub", {{"line", K::Line}, {"var", K::Variable}, {"term", K::Term}}, "derived",
       "A gives A[t/y] when y could be generalised"},
      {"UniqueElim", {{"line", K::Line}, {"newVar", K::Variable}}, "logical",
       "exists1 x. A gives exists x. (A & forall y. (A[y/x] -> y = x))"},
  };
  return table;
}

const RuleSpec* find_rule(const std::string& name) {
  for (const auto& r : rule_table()) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

json rule_manifest() {
  json out = json::array();
  for (const auto& r : rule_table()) {
    json params = json::array();
    for (const auto& p : r.params) params.push_back({{"name", p.name}, {"kind", param_kind_name(p.kind)}});
    out.push_back({{"name", r.name}, {"params", params}, {"group", r.group}, {"summary", r.summary}});
  }
  return out;
}

namespace {

struct Step {
  Expr formula;
  std::vector<std::size_t> parents;
  std::vector<std::size_t> discharges;
  std::optional<std::set<std::size_t>> live;  // defaults to the union over parents
};

std::string names_text(const NameSet& s) {
  std::string out;
  for (const auto& n : s) out += (out.empty() ? "" : ", ") + n;
  return out;
}

NameSet intersect(const NameSet& a, const NameSet& b) {
  NameSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

}  // namespace

class RuleApplier {
 public:
  RuleApplier(Proof& proof, const RuleInvocation& inv) : p_(proof), inv_(inv) {}

  std::size_t run() {
    const RuleSpec* spec = find_rule(inv_.rule);
    if (!spec) throw RuleError("unknown rule '" + inv_.rule + "'");
    if (!inv_.args.is_array() || inv_.args.size() != spec->params.size())
      throw RuleError(inv_.rule + " expects " + std::to_string(spec->params.size()) + " argument(s)");
    Step s = dispatch();
    return commit(std::move(s));
  }

 private:
  using Handler = Step (RuleApplier::*)();

  Step dispatch() {
    static const std::map<std::string, Handler> handlers = {
        {"Hyp", &RuleApplier::hyp},
        {"AndInt", &RuleApplier::and_int},
        {"AndElimL", &RuleApplier::and_elim_l},
        {"AndElimR", &RuleApplier::and_elim_r},
        {"ImpInt", &RuleApplier::imp_int},
        {"ImpElim", &RuleApplier::imp_elim},
        {"OrIntL", &RuleApplier::or_int_l},
        {"OrIntR", &RuleApplier::or_int_r},
        {"OrElim", &RuleApplier::or_elim},
        {"ForallInt", &RuleApplier::forall_int},
        {"ForallElim", &RuleApplier::forall_elim},
        {"ExistsInt", &RuleApplier::exists_int},
        {"ExistsElim", &RuleApplier::exists_elim},
        {"AbsI", &RuleApplier::abs_i},
        {"AbsC", &RuleApplier::abs_c},
        {"ClassElim", &RuleApplier::class_elim},
        {"ClassInt", &RuleApplier::class_int},
        {"Identity", &RuleApplier::identity},
        {"Symmetry", &RuleApplier::symmetry},
        {"EqualitySub", &RuleApplier::equality_sub},
        {"PolySub", &RuleApplier::poly_sub},
        {"PredSub", &RuleApplier::pred_sub},
        {"AxInt", &RuleApplier::ax_int},
        {"TheoremInt", &RuleApplier::theorem_int},
        {"DefEqInt", &RuleApplier::def_eq_int},
        {"DefExp", &RuleApplier::def_exp},
        {"DefSub", &RuleApplier::def_sub},
        {"EquivConst", &RuleApplier::equiv_const},
        {"EquivExp", &RuleApplier::equiv_exp},
        {"EquivJoin", &RuleApplier::equiv_join},
        {"EquivLeft", &RuleApplier::equiv_left},
        {"EquivRight", &RuleApplier::equiv_right},
        {"FreeSub", &RuleApplier::free_sub},
        {"UniqueElim", &RuleApplier::unique_elim},
    };
    return (this->*handlers.at(inv_.rule))();
  }

  std::size_t commit(Step s) {
    const std::size_t pos = p_.lines_.size();
    ProofElement el;
    el.formula = std::move(s.formula);
    el.rule = inv_.rule;
    el.parents = std::move(s.parents);
    el.params = inv_.args;
    el.discharges = s.discharges;
    el.pos = pos;
    std::set<std::size_t> live;
    if (s.live) {
      live = *s.live;
    } else {
      for (auto q : el.parents) live.insert(p_.lines_[q].live.begin(), p_.lines_[q].live.end());
    }
    el.live.assign(live.begin(), live.end());
    for (auto h : s.discharges) p_.lines_[h].discharged_by.push_back(pos);
    p_.lines_.push_back(std::move(el));
    p_.log_.push_back(inv_);
    return pos;
  }

  // ---- argument access ----

  [[noreturn]] void bad_arg(std::size_t i, const std::string& what) const {
    throw RuleError(inv_.rule + ": argument " + std::to_string(i + 1) + " " + what);
  }

  const json& raw(std::size_t i) const { return inv_.args.at(i); }

  std::size_t number(std::size_t i) const {
    const json& a = raw(i);
    if (!a.is_number_integer() || a.get<long long>() < 0) bad_arg(i, "must be a non-negative integer");
    return static_cast<std::size_t>(a.get<long long>());
  }

  std::size_t line(std::size_t i) const {
    std::size_t n = number(i);
    if (n >= p_.lines_.size()) throw RuleError("line " + std::to_string(n) + " does not exist");
    return n;
  }

  const Expr& F(std::size_t n) const { return p_.lines_[n].formula; }

  std::string text(std::size_t i) const {
    const json& a = raw(i);
    if (!a.is_string()) bad_arg(i, "must be a string");
    return a.get<std::string>();
  }

  Expr formula(std::size_t i) const { return p_.env_.parse(text(i)); }
  Expr term(std::size_t i) const { return p_.env_.parse_term(text(i)); }

  std::string variable(std::size_t i) const {
    std::string v = text(i);
    const Signature& sig = p_.env_.signature;
    if (!is_identifier(v) || (sig.kind_of(v) && !sig.is_variable(v))) bad_arg(i, "'" + v + "' is not a variable name");
    return v;
  }

  std::vector<Expr> terms(std::size_t i) const {
    const json& a = raw(i);
    std::vector<Expr> out;
    if (a.is_string()) {
      out.push_back(p_.env_.parse_term(a.get<std::string>()));
      return out;
    }
    if (!a.is_array()) bad_arg(i, "must be a list of terms");
    for (const auto& t : a) {
      if (!t.is_string()) bad_arg(i, "must be a list of terms");
      out.push_back(p_.env_.parse_term(t.get<std::string>()));
    }
    return out;
  }

  std::vector<std::size_t> positions(std::size_t i) const {
    const json& a = raw(i);
    if (!a.is_array()) bad_arg(i, "must be a list of positions");
    std::vector<std::size_t> out;
    for (const auto& x : a) {
      if (!x.is_number_integer() || x.get<long long>() < 0) bad_arg(i, "must be a list of non-negative integers");
      out.push_back(static_cast<std::size_t>(x.get<long long>()));
    }
    return out;
  }

  std::string predicate(std::size_t i) const {
    std::string name = text(i);
    if (!p_.env_.signature.predicate(name)) throw RuleError("'" + name + "' is not a declared predicate");
    return name;
  }

  std::string second_order(std::size_t i) const {
    std::string name = text(i);
    if (!is_identifier(name) || p_.env_.signature.kind_of(name))
      bad_arg(i, "'" + name + "' is not a second-order variable");
    return name;
  }

  // ---- helpers ----

  const Expr& expect(std::size_t n, Kind k, const char* what) const {
    if (F(n).kind() != k)
      throw RuleError("line " + std::to_string(n) + " is not " + what);
    return F(n);
  }

  void require_hyp(std::size_t n) const {
    if (p_.lines_[n].rule != "Hyp") throw RuleError("line " + std::to_string(n) + " is not a hypothesis");
  }

  std::set<std::size_t> live(std::size_t n) const {
    return {p_.lines_[n].live.begin(), p_.lines_[n].live.end()};
  }

  NameSet live_free_vars(const std::set<std::size_t>& hyps) const {
    NameSet out;
    for (auto h : hyps) {
      auto fv = free_vars(F(h));
      out.insert(fv.begin(), fv.end());
    }
    return out;
  }

  static void same(const Expr& a, const Expr& b, const std::string& msg) {
    if (!alpha_equal(a, b)) throw RuleError(msg);
  }

  // ---- rules ----

  Step hyp() { return {formula(0), {}, {}, std::set<std::size_t>{p_.lines_.size()}}; }

  Step and_int() {
    auto a = line(0), b = line(1);
    return {Expr::conj(F(a), F(b)), {a, b}, {}, {}};
  }

  Step and_elim_l() {
    auto a = line(0);
    return {expect(a, Kind::And, "a conjunction").lhs(), {a}, {}, {}};
  }

  Step and_elim_r() {
    auto a = line(0);
    return {expect(a, Kind::And, "a conjunction").rhs(), {a}, {}, {}};
  }

  Step imp_int() {
    auto a = line(0), h = line(1);
    require_hyp(h);
    auto l = live(a);
    l.erase(h);
    return {Expr::implies(F(h), F(a)), {a}, {h}, l};
  }

  Step imp_elim() {
    auto a = line(0), i = line(1);
    const Expr& imp = expect(i, Kind::Implies, "an implication");
    same(F(a), imp.lhs(), "line " + std::to_string(a) + " does not match the antecedent of line " + std::to_string(i));
    return {imp.rhs(), {a, i}, {}, {}};
  }

  Step or_int_l() {
    auto a = line(0);
    return {Expr::disj(formula(1), F(a)), {a}, {}, {}};
  }

  Step or_int_r() {
    auto a = line(0);
    return {Expr::disj(F(a), formula(1)), {a}, {}, {}};
  }

  Step or_elim() {
    auto o = line(0), hl = line(1), cl = line(2), hr = line(3), cr = line(4);
    const Expr& dis = expect(o, Kind::Or, "a disjunction");
    require_hyp(hl);
    require_hyp(hr);
    same(F(hl), dis.lhs(), "left hypothesis does not match the left disjunct");
    same(F(hr), dis.rhs(), "right hypothesis does not match the right disjunct");
    same(F(cl), F(cr), "the two cases conclude different formulas");
    auto l = live(o);
    auto left = live(cl), right = live(cr);
    left.erase(hl);
    right.erase(hr);
    l.insert(left.begin(), left.end());
    l.insert(right.begin(), right.end());
    std::vector<std::size_t> dis_lines{hl};
    if (hr != hl) dis_lines.push_back(hr);
    return {F(cl), {o, hl, cl, hr, cr}, dis_lines, l};
  }

  // Shared by ForallInt and FreeSub.
  Expr generalize(std::size_t a, const std::string& y, const std::string& x) const {
    NameSet bad = live_free_vars(live(a));
    if (bad.count(y))
      throw RuleError("variable '" + y + "' occurs free in a hypothesis of line " + std::to_string(a));
    if (x != y && occurs_free(x, F(a)))
      throw RuleError("variable '" + x + "' already occurs free in line " + std::to_string(a));
    return Expr::forall(x, substitute(F(a), y, Expr::variable(x)));
  }

  Step forall_int() {
    auto a = line(0);
    return {generalize(a, variable(1), variable(2)), {a}, {}, {}};
  }

  Step forall_elim() {
    auto a = line(0);
    const Expr& q = expect(a, Kind::Forall, "a universal formula");
    return {substitute(q.body(), q.name(), term(1)), {a}, {}, {}};
  }

  Step exists_int() {
    auto a = line(0);
    Expr t = term(1);
    std::string x = variable(2);
    Expr body = replace_at(F(a), t, Expr::variable(x), positions(3));
    if (!alpha_equal(substitute(body, x, t), F(a)))
      throw RuleError("abstracting those occurrences would capture or merge variable '" + x + "'");
    return {Expr::exists(x, body), {a}, {}, {}};
  }

  Step exists_elim() {
    auto ex = line(0), inst = line(1), con = line(2);
    std::string y = variable(3);
    const Expr& q = expect(ex, Kind::Exists, "an existential formula");
    require_hyp(inst);
    if (occurs_free(y, q)) throw RuleError("variable '" + y + "' occurs free in line " + std::to_string(ex));
    same(F(inst), substitute(q.body(), q.name(), Expr::variable(y)),
         "line " + std::to_string(inst) + " is not the instance of line " + std::to_string(ex) + " at '" + y + "'");
    if (occurs_free(y, F(con))) throw RuleError("variable '" + y + "' occurs free in the conclusion");
    auto rest = live(con);
    rest.erase(inst);
    if (live_free_vars(rest).count(y))
      throw RuleError("variable '" + y + "' occurs free in another hypothesis of line " + std::to_string(con));
    auto l = live(ex);
    l.insert(rest.begin(), rest.end());
    return {F(con), {ex, inst, con}, {inst}, l};
  }

  Step abs_i() {
    auto a = line(0);
    expect(a, Kind::Bottom, "_|_");
    return {formula(1), {a}, {}, {}};
  }

  Step abs_c() {
    auto h = line(0), b = line(1);
    require_hyp(h);
    if (!F(h).is_negation()) throw RuleError("line " + std::to_string(h) + " is not a negation");
    expect(b, Kind::Bottom, "_|_");
    auto l = live(b);
    l.erase(h);
    return {F(h).lhs(), {b}, {h}, l};
  }

  Expr guard(const Expr& t) const {
    const std::string& g = p_.env_.class_guard;
    const SymbolInfo* info = p_.env_.signature.predicate(g);
    if (!info || info->arity != 1) throw RuleError("class guard '" + g + "' is not a unary predicate");
    return Expr::predicate(g, {t});
  }

  Step class_elim() {
    auto a = line(0);
    const Expr& m = expect(a, Kind::Member, "a membership");
    const Expr& cls = m.rhs();
    if (cls.kind() != Kind::Extension) throw RuleError("line " + std::to_string(a) + " is not membership in a class term");
    const Expr& t = m.lhs();
    return {Expr::conj(guard(t), substitute(cls.body(), cls.name(), t)), {a}, {}, {}};
  }

  Step class_int() {
    auto a = line(0);
    std::string x = variable(1);
    const Expr& c = expect(a, Kind::And, "a conjunction");
    if (c.lhs().kind() != Kind::Predicate || c.lhs().name() != p_.env_.class_guard || c.lhs().args().size() != 1)
      throw RuleError("the left conjunct of line " + std::to_string(a) + " is not " + p_.env_.class_guard + "(t)");
    const Expr& t = c.lhs().arg(0);
    const Expr& b = c.rhs();
    // abstract the occurrences of t that are free in b
    NameSet tfv = free_vars(t);
    Expr body = b;
    auto paths = find_occurrences(b, t);
    for (auto it = paths.rbegin(); it != paths.rend(); ++it) {
      if (intersect(binders_above(b, *it), tfv).empty()) body = replace_subexpr(body, *it, Expr::variable(x));
    }
    if (!alpha_equal(substitute(body, x, t), b))
      throw RuleError("variable '" + x + "' cannot abstract the term in line " + std::to_string(a));
    return {Expr::member(t, Expr::extension(x, body)), {a}, {}, {}};
  }

  Step identity() {
    Expr t = term(0);
    return {Expr::equal(t, t), {}, {}, {}};
  }

  Step symmetry() {
    auto a = line(0);
    const Expr& e = expect(a, Kind::Equal, "an equation");
    return {Expr::equal(e.rhs(), e.lhs()), {a}, {}, {}};
  }

  Step equality_sub() {
    auto a = line(0), q = line(1);
    const Expr& eq = expect(q, Kind::Equal, "an equation");
    const Expr& t = eq.lhs();
    const Expr& s = eq.rhs();
    auto pos = positions(2);
    auto paths = find_occurrences(F(a), t);
    NameSet fv = free_vars(t);
    auto sfv = free_vars(s);
    fv.insert(sfv.begin(), sfv.end());
    for (auto i : pos) {
      if (i >= paths.size()) break;  // replace_at reports the range error
      auto caught = intersect(binders_above(F(a), paths[i]), fv);
      if (!caught.empty()) throw RuleError("occurrence " + std::to_string(i) + " is under a binder of " + names_text(caught));
    }
    return {replace_at(F(a), t, s, pos), {a, q}, {}, {}};
  }

  Step poly_sub() {
    auto a = line(0);
    std::string var = second_order(1);
    Expr b = formula(2);
    const Expr target = Expr::second_order(var);
    auto paths = find_occurrences(F(a), target);
    if (paths.empty()) throw RuleError("'" + var + "' does not occur in line " + std::to_string(a));
    for (auto h : live(a)) {
      if (second_order_vars(F(h)).count(var))
        throw RuleError("'" + var + "' occurs in hypothesis " + std::to_string(h));
    }
    NameSet fv = free_vars(b);
    for (const auto& path : paths) {
      auto caught = intersect(binders_above(F(a), path), fv);
      if (!caught.empty()) throw RuleError("free variable " + names_text(caught) + " would become bound");
    }
    std::vector<std::size_t> all(paths.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return {replace_at(F(a), target, b, all), {a}, {}, {}};
  }

  Step pred_sub() {
    auto a = line(0);
    std::string pred = predicate(1);
    if (p_.env_.definition(pred)) throw RuleError("Predicate is defined.");
    std::vector<std::string> params;
    for (const auto& t : terms(2)) {
      if (t.kind() != Kind::Variable) throw RuleError("PredSub parameters must be variables");
      if (std::find(params.begin(), params.end(), t.name()) != params.end())
        throw RuleError("PredSub parameters must be distinct");
      params.push_back(t.name());
    }
    if (static_cast<int>(params.size()) != p_.env_.signature.predicate(pred)->arity)
      throw RuleError("'" + pred + "' takes " + std::to_string(p_.env_.signature.predicate(pred)->arity) + " argument(s)");
    Expr b = formula(3);
    auto pos = positions(4);
    const ProofEnvironment& env = p_.env_;
    auto mentions = [&](const Expr& f) { return predicate_symbols(f).count(pred) > 0; };
    for (const auto& f : env.axioms)
      if (mentions(f)) throw RuleError("'" + pred + "' occurs in an axiom");
    for (const auto& f : env.theorems)
      if (mentions(f)) throw RuleError("'" + pred + "' occurs in an assumed theorem");
    for (const auto& f : env.def_equations)
      if (mentions(f)) throw RuleError("'" + pred + "' occurs in a defining equation");
    for (const auto& d : env.definitions)
      if (mentions(d.body)) throw RuleError("'" + pred + "' occurs in a definition");
    for (auto h : live(a))
      if (mentions(F(h))) throw RuleError("'" + pred + "' occurs in hypothesis " + std::to_string(h));
    auto paths = collect_paths(F(a), [&](const Expr& e) { return e.kind() == Kind::Predicate && e.name() == pred; });
    std::vector<std::size_t> sorted = pos;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() != pos.size()) throw RuleError("duplicate position");
    for (auto i : sorted)
      if (i >= paths.size())
        throw RuleError("position " + std::to_string(i) + " out of range: " + std::to_string(paths.size()) + " occurrence(s)");
    if (sorted.size() != paths.size()) throw RuleError("PredSub must replace every occurrence of '" + pred + "'");
    NameSet extra = free_vars(b);
    for (const auto& x : params) extra.erase(x);
    Expr out = F(a);
    for (auto it = paths.rbegin(); it != paths.rend(); ++it) {
      auto caught = intersect(binders_above(F(a), *it), extra);
      if (!caught.empty()) throw RuleError("free variable " + names_text(caught) + " would become bound");
      const Expr& app = subexpr_at(F(a), *it);
      std::map<std::string, Expr> sub;
      for (std::size_t k = 0; k < params.size(); ++k) sub.emplace(params[k], app.arg(k));
      out = replace_subexpr(out, *it, substitute(b, sub));
    }
    return {out, {a}, {}, {}};
  }

  std::size_t env_index(std::size_t size, const char* what) const {
    std::size_t n = number(0);
    if (n >= size) throw RuleError(std::string("there is no ") + what + " " + std::to_string(n));
    return n;
  }

  Step ax_int() { return {p_.env_.axioms[env_index(p_.env_.axioms.size(), "axiom")], {}, {}, {}}; }
  Step theorem_int() { return {p_.env_.theorems[env_index(p_.env_.theorems.size(), "theorem")], {}, {}, {}}; }
  Step def_eq_int() {
    return {p_.env_.def_equations[env_index(p_.env_.def_equations.size(), "defining equation")], {}, {}, {}};
  }

  const PredicateDefinition& defined(const std::string& pred) const {
    const PredicateDefinition* d = p_.env_.definition(pred);
    if (!d) throw RuleError("'" + pred + "' has no definition");
    return *d;
  }

  Step def_exp() {
    auto a = line(0);
    const PredicateDefinition& d = defined(predicate(1));
    auto pos = positions(2);
    auto paths = collect_paths(F(a), [&](const Expr& e) { return e.kind() == Kind::Predicate && e.name() == d.name; });
    std::vector<std::size_t> sorted = pos;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw RuleError("duplicate position");
    Expr out = F(a);
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
      if (*it >= paths.size())
        throw RuleError("position " + std::to_string(*it) + " out of range: " + std::to_string(paths.size()) + " occurrence(s)");
      const Expr& app = subexpr_at(F(a), paths[*it]);
      out = replace_subexpr(out, paths[*it], d.instantiate(app.args()));
    }
    return {out, {a}, {}, {}};
  }

  Step def_sub() {
    auto a = line(0);
    const PredicateDefinition& d = defined(predicate(1));
    auto args = terms(2);
    if (args.size() != d.params.size())
      throw RuleError("'" + d.name + "' takes " + std::to_string(d.params.size()) + " argument(s)");
    Expr body = d.instantiate(args);
    Expr app = Expr::predicate(d.name, args);
    return {replace_at(F(a), body, app, positions(3), Match::Alpha), {a}, {}, {}};
  }

  Step equiv_const() {
    auto a = line(0);
    const Expr& c = expect(a, Kind::And, "a conjunction of implications");
    if (c.lhs().kind() != Kind::Implies || c.rhs().kind() != Kind::Implies)
      throw RuleError("line " + std::to_string(a) + " is not a conjunction of implications");
    same(c.lhs().lhs(), c.rhs().rhs(), "the implications are not converse");
    same(c.lhs().rhs(), c.rhs().lhs(), "the implications are not converse");
    return {Expr::iff(c.lhs().lhs(), c.lhs().rhs()), {a}, {}, {}};
  }

  Step equiv_exp() {
    auto a = line(0);
    const Expr& e = expect(a, Kind::Iff, "an equivalence");
    return {Expr::conj(Expr::implies(e.lhs(), e.rhs()), Expr::implies(e.rhs(), e.lhs())), {a}, {}, {}};
  }

  // Derived rules run their core expansion on a scratch copy and keep only
  // the final formula.
  Expr expand(const std::vector<RuleInvocation>& steps) const {
    Proof scratch = p_;
    std::size_t last = 0;
    for (const auto& s : steps) last = scratch.apply(s);
    return scratch.line(last).formula;
  }

  Step equiv_join() {
    auto a = line(0), b = line(1);
    std::size_t n = p_.size();
    Expr f = expand({{"AndInt", {a, b}}, {"EquivConst", {n}}});
    return {f, {a, b}, {}, {}};
  }

  Step equiv_left() {
    auto a = line(0);
    std::size_t n = p_.size();
    return {expand({{"EquivExp", {a}}, {"AndElimL", {n}}}), {a}, {}, {}};
  }

  Step equiv_right() {
    auto a = line(0);
    std::size_t n = p_.size();
    return {expand({{"EquivExp", {a}}, {"AndElimR", {n}}}), {a}, {}, {}};
  }

  Step free_sub() {
    auto a = line(0);
    std::string y = variable(1);
    std::size_t n = p_.size();
    Expr f = expand({{"ForallInt", {a, y, y}}, {"ForallElim", {n, text(2)}}});
    return {f, {a}, {}, {}};
  }

  Step unique_elim() {
    auto a = line(0);
    std::string y = variable(1);
    const Expr& q = expect(a, Kind::ExistsUnique, "a unique existence formula");
    const std::string& x = q.name();
    const Expr& body = q.body();
    if (y == x) throw RuleError("the new variable must differ from '" + x + "'");
    if (occurs_free(y, body)) throw RuleError("variable '" + y + "' occurs free in line " + std::to_string(a));
    Expr uniq = Expr::forall(
        y, Expr::implies(substitute(body, x, Expr::variable(y)), Expr::equal(Expr::variable(y), Expr::variable(x))));
    return {Expr::exists(x, Expr::conj(body, uniq)), {a}, {}, {}};
  }

  Proof& p_;
  const RuleInvocation& inv_;
};

Proof::Proof() : env_(ProofEnvironment::default_environment()) {}

Proof::Proof(ProofEnvironment env) : env_(std::move(env)) {}

const ProofElement& Proof::line(std::size_t n) const {
  if (n >= lines_.size()) throw RuleError("line " + std::to_string(n) + " does not exist");
  return lines_[n];
}

std::size_t Proof::apply(const RuleInvocation& inv) {
  // RuleApplier only mutates in commit(), after every check has passed.
  return RuleApplier(*this, inv).run();
}

std::size_t Proof::apply(const std::string& rule, json args) { return apply(RuleInvocation{rule, std::move(args)}); }

std::size_t Proof::hyp(const std::string& text) { return apply("Hyp", json::array({text})); }

std::set<std::size_t> Proof::dependency_tree(std::size_t n) const {
  line(n);
  std::set<std::size_t> out;
  std::vector<std::size_t> todo{n};
  while (!todo.empty()) {
    std::size_t k = todo.back();
    todo.pop_back();
    if (!out.insert(k).second) continue;
    for (auto q : lines_[k].parents) todo.push_back(q);
  }
  return out;
}

std::set<std::size_t> Proof::hypotheses(std::size_t n) const {
  const auto& l = line(n).live;
  return {l.begin(), l.end()};
}

bool Proof::qed(std::size_t n) {
  if (!line(n).live.empty()) return false;
  lines_[n].qed = true;
  return true;
}

void Proof::undo() {
  if (lines_.empty()) throw RuleError("the proof is empty");
  const std::size_t last = lines_.size() - 1;
  for (auto h : lines_[last].discharges) {
    auto& by = lines_[h].discharged_by;
    by.erase(std::remove(by.begin(), by.end(), last), by.end());
  }
  lines_.pop_back();
  log_.pop_back();
}

void Proof::clear() {
  lines_.clear();
  log_.clear();
}

std::vector<std::size_t> Proof::used_theorems() const {
  std::set<std::size_t> used;
  for (const auto& inv : log_) {
    if (inv.rule == "TheoremInt" && inv.args.size() == 1 && inv.args[0].is_number_integer())
      used.insert(inv.args[0].get<std::size_t>());
  }
  return {used.begin(), used.end()};
}

std::string Proof::line_text(std::size_t n) const {
  const ProofElement& el = line(n);
  std::string out = std::to_string(n) + ". " + env_.show(el.formula) + " " + el.rule + " ";
  // The equivalence toggles are shown without their premise.
  if (el.rule != "EquivConst" && el.rule != "EquivExp") {
    for (std::size_t i = 0; i < el.parents.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(el.parents[i]);
    }
  }
  if (el.qed) out += " Qed";
  return out;
}

std::string Proof::listing() const {
  std::string out;
  for (std::size_t i = 0; i < lines_.size(); ++i) out += line_text(i) + "\n";
  return out;
}

std::string invocation_text(const RuleInvocation& inv) {
  std::string out = inv.rule + "(";
  for (std::size_t i = 0; i < inv.args.size(); ++i) {
    if (i) out += ",";
    out += inv.args[i].dump();
  }
  return out + ")";
}

std::string Proof::log_text() const {
  std::string out;
  for (std::size_t i = 0; i < log_.size(); ++i) out += std::to_string(i) + ". " + invocation_text(log_[i]) + "\n";
  return out;
}

ReplayResult replay_log(const ProofEnvironment& env, const std::vector<RuleInvocation>& log) {
  ReplayResult r{Proof(env), true, std::nullopt, "", std::nullopt};
  for (std::size_t i = 0; i < log.size(); ++i) {
    try {
      r.proof.apply(log[i]);
    } catch (const Error& e) {
      r.ok = false;
      r.failed_entry = i;
      r.error = "entry " + std::to_string(i) + " " + invocation_text(log[i]) + ": " + e.what();
      return r;
    }
  }
  if (!log.empty()) r.qed = r.proof.qed(r.proof.size() - 1);
  return r;
}

}  // namespace ndk
