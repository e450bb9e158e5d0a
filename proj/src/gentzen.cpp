#include "ndk/gentzen.hpp"

#include <algorithm>
#include <regex>

#include "ndk/error.hpp"
#include "ndk/printer.hpp"

namespace ndk::gentzen {

bool Sequent::contains(const Expr& f) const { return std::find(body.begin(), body.end(), f) != body.end(); }

std::vector<Expr> Sequent::body_set() const {
  std::vector<Expr> out = body;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string Sequent::text() const {
  std::string out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += ", ";
    out += render_line(body[i]);
  }
  if (!out.empty()) out += " ";
  return out + "=> " + render_line(head);
}

bool same_sequent(const Sequent& a, const Sequent& b) { return a.head == b.head && a.body_set() == b.body_set(); }

bool SequentLess::operator()(const Sequent& a, const Sequent& b) const {
  int c = compare(a.head, b.head);
  if (c != 0) return c < 0;
  return a.body_set() < b.body_set();
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::rand: return "rand";
    case Rule::ror1: return "ror1";
    case Rule::ror2: return "ror2";
    case Rule::rimp: return "rimp";
    case Rule::land: return "land";
    case Rule::lor: return "lor";
    case Rule::limp: return "limp";
    case Rule::labs: return "labs";
    case Rule::ax: return "ax";
  }
  return "?";
}

bool rule_uses_body_index(Rule r) {
  return r == Rule::land || r == Rule::lor || r == Rule::limp || r == Rule::labs || r == Rule::ax;
}

std::string ReductionStep::text() const {
  std::string out = std::string(rule_name(rule)) + "(" + std::to_string(sequent);
  if (rule_uses_body_index(rule)) out += "," + std::to_string(body_index);
  return out + ")";
}

ReductionStep ReductionStep::parse(const std::string& text) {
  static const std::regex re(R"(\s*([a-z0-9]+)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw Error("malformed reduction step '" + text + "'");
  static const Rule all[] = {Rule::rand, Rule::ror1, Rule::ror2, Rule::rimp, Rule::land,
                             Rule::lor,  Rule::limp, Rule::labs, Rule::ax};
  for (Rule r : all) {
    if (m[1] == rule_name(r)) {
      if (rule_uses_body_index(r) != m[3].matched) throw Error("wrong number of indices in '" + text + "'");
      ReductionStep s{r, std::stoul(m[2]), 0};
      if (m[3].matched) s.body_index = std::stoul(m[3]);
      return s;
    }
  }
  throw Error("unknown reduction rule '" + std::string(m[1]) + "'");
}

struct SequentListState::Chain {
  Sequent seq;
  std::shared_ptr<const Chain> up;
};

namespace {

using ChainPtr = std::shared_ptr<const SequentListState::Chain>;

bool in_chain(const Sequent& s, const ChainPtr& chain) {
  for (const SequentListState::Chain* c = chain.get(); c; c = c->up.get()) {
    if (same_sequent(s, c->seq)) return true;
  }
  return false;
}

void add_front(std::vector<Expr>& body, const Expr& f) {
  if (std::find(body.begin(), body.end(), f) == body.end()) body.insert(body.begin(), f);
}

std::vector<Expr> without(const std::vector<Expr>& body, std::size_t k) {
  std::vector<Expr> out = body;
  out.erase(out.begin() + static_cast<long>(k));
  return out;
}

// Premises of the inverted rule, or the reason it does not apply.
ReduceOutcome premises(const Sequent& s, Rule rule, std::size_t k) {
  ReduceOutcome out;
  auto mismatch = [&](const std::string& why) {
    out.status = ReduceStatus::ShapeMismatch;
    out.message = std::string(rule_name(rule)) + ": " + why;
    return out;
  };
  if (rule_uses_body_index(rule) && k >= s.body.size()) {
    out.status = ReduceStatus::OutOfRange;
    out.message = "body index " + std::to_string(k) + " out of range";
    return out;
  }
  const Expr& c = s.head;
  switch (rule) {
    case Rule::rand:
      if (c.kind() != Kind::And) return mismatch("head is not a conjunction");
      out.produced = {Sequent{s.body, c.lhs()}, Sequent{s.body, c.rhs()}};
      break;
    case Rule::ror1:
    case Rule::ror2:
      if (c.kind() != Kind::Or) return mismatch("head is not a disjunction");
      out.produced = {Sequent{s.body, rule == Rule::ror1 ? c.lhs() : c.rhs()}};
      break;
    case Rule::rimp: {
      if (c.kind() != Kind::Implies) return mismatch("head is not an implication");
      Sequent n{s.body, c.rhs()};
      add_front(n.body, c.lhs());
      out.produced = {n};
      break;
    }
    case Rule::land: {
      const Expr& f = s.body[k];
      if (f.kind() != Kind::And) return mismatch("body formula is not a conjunction");
      Sequent n{without(s.body, k), c};
      add_front(n.body, f.rhs());
      add_front(n.body, f.lhs());
      out.produced = {n};
      break;
    }
    case Rule::lor: {
      const Expr& f = s.body[k];
      if (f.kind() != Kind::Or) return mismatch("body formula is not a disjunction");
      Sequent l{without(s.body, k), c}, r{without(s.body, k), c};
      add_front(l.body, f.lhs());
      add_front(r.body, f.rhs());
      out.produced = {l, r};
      break;
    }
    case Rule::limp: {
      const Expr& f = s.body[k];
      if (f.kind() != Kind::Implies) return mismatch("body formula is not an implication");
      Sequent l{s.body, f.lhs()};
      Sequent r{s.body, c};
      if (s.contains(f.rhs())) {
        r.body = without(s.body, k);
      } else {
        r.body[k] = f.rhs();
      }
      out.produced = {l, r};
      break;
    }
    case Rule::labs:
      if (s.body[k].kind() != Kind::Bottom) return mismatch("body formula is not _|_");
      break;
    case Rule::ax:
      if (!c.is_atomic_proposition()) return mismatch("head is not atomic");
      if (s.body[k] != c) return mismatch("body formula differs from the head");
      break;
  }
  return out;
}

// Ancestry check for the premises of s.
bool cycles(const ReduceOutcome& r, const Sequent& s, const ChainPtr& chain) {
  for (const auto& n : r.produced) {
    if (same_sequent(n, s) || in_chain(n, chain)) return true;
  }
  return false;
}

}  // namespace

SequentListState SequentListState::initial(const Expr& goal) {
  SequentListState st;
  Sequent s{{}, negation_expand(goal)};
  st.sequents_.push_back(s);
  st.chains_.push_back(nullptr);
  st.memory_.insert(s);
  return st;
}

std::string SequentListState::display() const {
  std::string out;
  for (std::size_t i = 0; i < sequents_.size(); ++i) out += std::to_string(i) + ". " + sequents_[i].text() + "\n";
  return out;
}

struct Reducer {
  static ReduceOutcome apply(SequentListState& st, const ReductionStep& step) {
    if (step.sequent >= st.sequents_.size()) {
      ReduceOutcome out;
      out.status = ReduceStatus::OutOfRange;
      out.message = "sequent index " + std::to_string(step.sequent) + " out of range";
      return out;
    }
    const Sequent s = st.sequents_[step.sequent];
    const ChainPtr chain = st.chains_[step.sequent];
    ReduceOutcome out = premises(s, step.rule, step.body_index);
    if (!out.ok()) return out;
    if (cycles(out, s, chain)) {
      out.status = ReduceStatus::Cycle;
      out.message = step.text() + " repeats an earlier sequent";
      out.produced.clear();
      return out;
    }
    auto link = std::make_shared<const SequentListState::Chain>(SequentListState::Chain{s, chain});
    auto at = static_cast<long>(step.sequent);
    st.sequents_.erase(st.sequents_.begin() + at);
    st.chains_.erase(st.chains_.begin() + at);
    st.sequents_.insert(st.sequents_.begin() + at, out.produced.begin(), out.produced.end());
    st.chains_.insert(st.chains_.begin() + at, out.produced.size(), link);
    for (const auto& n : out.produced) st.memory_.insert(n);
    st.history_.push_back(step);
    return out;
  }
};

ReduceOutcome reduce(SequentListState& state, const ReductionStep& step) { return Reducer::apply(state, step); }

Expr negation_expand(const Expr& f) {
  switch (f.kind()) {
    case Kind::SecondOrder:
    case Kind::Bottom:
      return f;
    case Kind::And:
      return Expr::conj(negation_expand(f.lhs()), negation_expand(f.rhs()));
    case Kind::Or:
      return Expr::disj(negation_expand(f.lhs()), negation_expand(f.rhs()));
    case Kind::Implies:
      return Expr::implies(negation_expand(f.lhs()), negation_expand(f.rhs()));
    case Kind::Iff: {
      Expr a = negation_expand(f.lhs()), b = negation_expand(f.rhs());
      return Expr::conj(Expr::implies(a, b), Expr::implies(b, a));
    }
    default:
      throw Error("not a propositional formula: " + render_line(f));
  }
}

namespace {

struct Node {
  ReductionStep step;
  std::vector<Node> kids;
};

class Search {
 public:
  std::optional<Node> prove(const Sequent& s, const ChainPtr& chain) {
    const std::size_t n = s.body.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (premises(s, Rule::ax, k).ok()) return Node{{Rule::ax, 0, k}, {}};
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (s.body[k].kind() == Kind::Bottom) return Node{{Rule::labs, 0, k}, {}};
    }
    // Invertible rules lose nothing, so the first one that applies is taken.
    if (auto step = first_invertible(s)) return expand(s, chain, *step);
    for (std::size_t k = 0; k < n; ++k) {
      if (s.body[k].kind() != Kind::Implies) continue;
      if (auto node = expand(s, chain, {Rule::limp, 0, k})) return node;
    }
    if (s.head.kind() == Kind::Or) {
      if (auto node = expand(s, chain, {Rule::ror1, 0, 0})) return node;
      if (auto node = expand(s, chain, {Rule::ror2, 0, 0})) return node;
    }
    return std::nullopt;
  }

 private:
  static std::optional<ReductionStep> first_invertible(const Sequent& s) {
    for (std::size_t k = 0; k < s.body.size(); ++k)
      if (s.body[k].kind() == Kind::And) return ReductionStep{Rule::land, 0, k};
    if (s.head.kind() == Kind::And) return ReductionStep{Rule::rand, 0, 0};
    if (s.head.kind() == Kind::Implies) return ReductionStep{Rule::rimp, 0, 0};
    for (std::size_t k = 0; k < s.body.size(); ++k)
      if (s.body[k].kind() == Kind::Or) return ReductionStep{Rule::lor, 0, k};
    return std::nullopt;
  }

  std::optional<Node> expand(const Sequent& s, const ChainPtr& chain, const ReductionStep& step) {
    ReduceOutcome r = premises(s, step.rule, step.body_index);
    if (!r.ok() || cycles(r, s, chain)) return std::nullopt;
    auto link = std::make_shared<const SequentListState::Chain>(SequentListState::Chain{s, chain});
    Node node{step, {}};
    for (const auto& p : r.produced) {
      auto kid = prove(p, link);
      if (!kid) return std::nullopt;
      node.kids.push_back(std::move(*kid));
    }
    return node;
  }
};

void flatten(const Node& n, std::vector<ReductionStep>& out) {
  out.push_back(n.step);
  for (const auto& k : n.kids) flatten(k, out);
}

}  // namespace

std::optional<std::vector<ReductionStep>> auto_prove(const Expr& goal) {
  Sequent root{{}, negation_expand(goal)};
  Search search;
  auto tree = search.prove(root, nullptr);
  if (!tree) return std::nullopt;
  std::vector<ReductionStep> out;
  flatten(*tree, out);
  return out;
}

namespace {

std::string step_label(const ReductionStep& s) {
  switch (s.rule) {
    case Rule::rand: return "Rand";
    case Rule::ror1: return "Ror1";
    case Rule::ror2: return "Ror2";
    case Rule::rimp: return "Rimp";
    case Rule::land: return "Land" + std::to_string(s.body_index);
    case Rule::lor: return "Lor" + std::to_string(s.body_index);
    case Rule::limp: return "Limp" + std::to_string(s.body_index);
    case Rule::labs: return "Labs" + std::to_string(s.body_index);
    case Rule::ax: return "Ax" + std::to_string(s.body_index);
  }
  return "?";
}

}  // namespace

std::vector<std::string> reconstruct(const Expr& goal, const std::vector<ReductionStep>& history) {
  SequentListState st = SequentListState::initial(goal);
  std::vector<Sequent> all{st.sequents().front()};
  std::vector<std::string> label(1);
  std::vector<std::vector<std::size_t>> kids(1);
  std::vector<std::size_t> ids{0};
  for (std::size_t i = 0; i < history.size(); ++i) {
    const ReductionStep& step = history[i];
    if (step.sequent >= ids.size()) throw Error("step " + std::to_string(i + 1) + " " + step.text() + ": sequent index out of range");
    const std::size_t target = ids[step.sequent];
    ReduceOutcome r = reduce(st, step);
    if (!r.ok()) throw Error("step " + std::to_string(i + 1) + " " + step.text() + " failed: " + r.message);
    label[target] = step_label(step);
    std::vector<std::size_t> fresh;
    for (const auto& p : r.produced) {
      fresh.push_back(all.size());
      all.push_back(p);
      label.emplace_back();
      kids.emplace_back();
    }
    kids[target] = fresh;
    ids.erase(ids.begin() + static_cast<long>(step.sequent));
    ids.insert(ids.begin() + static_cast<long>(step.sequent), fresh.begin(), fresh.end());
  }
  if (!st.closed()) throw Error("the history leaves " + std::to_string(st.sequents().size()) + " sequent(s) open");
  const std::size_t n = all.size();
  std::vector<std::string> lines;
  for (std::size_t line = 0; line < n; ++line) {
    const std::size_t id = n - 1 - line;
    std::string text = std::to_string(line) + ". " + all[id].text() + " " + label[id];
    for (auto k : kids[id]) text += " " + std::to_string(n - 1 - k);
    lines.push_back(text);
  }
  return lines;
}

}  // namespace ndk::gentzen
