#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ndk/expr.hpp"

namespace ndk::gentzen {

// Γ => C. The body is kept in display order but behaves as a set: a formula
// already present is never added twice.
struct Sequent {
  std::vector<Expr> body;
  Expr head = Expr::bottom();

  bool contains(const Expr& f) const;
  // Order-insensitive comparison key.
  std::vector<Expr> body_set() const;
  std::string text() const;
};

bool same_sequent(const Sequent& a, const Sequent& b);

struct SequentLess {
  bool operator()(const Sequent& a, const Sequent& b) const;
};

enum class Rule { rand, ror1, ror2, rimp, land, lor, limp, labs, ax };

const char* rule_name(Rule r);
bool rule_uses_body_index(Rule r);

struct ReductionStep {
  Rule rule;
  std::size_t sequent = 0;
  std::size_t body_index = 0;  // land, lor, limp, labs, ax

  std::string text() const;  // "rimp(0)", "limp(0,1)"
  static ReductionStep parse(const std::string& text);
  friend bool operator==(const ReductionStep&, const ReductionStep&) = default;
};

// The sequents still to be proved, each with the chain of sequents it was
// reduced from, plus everything ever generated and the steps taken.
class SequentListState {
 public:
  struct Chain;  // ancestry, shared between siblings

  static SequentListState initial(const Expr& goal);

  const std::vector<Sequent>& sequents() const { return sequents_; }
  const std::set<Sequent, SequentLess>& memory() const { return memory_; }
  const std::vector<ReductionStep>& history() const { return history_; }
  bool closed() const { return sequents_.empty(); }
  std::string display() const;

 private:
  friend struct Reducer;
  std::vector<Sequent> sequents_;
  std::vector<std::shared_ptr<const Chain>> chains_;
  std::set<Sequent, SequentLess> memory_;
  std::vector<ReductionStep> history_;
};

enum class ReduceStatus { Ok, OutOfRange, ShapeMismatch, Cycle };

struct ReduceOutcome {
  ReduceStatus status = ReduceStatus::Ok;
  std::string message;
  std::vector<Sequent> produced;  // in list order, empty for ax and labs
  bool ok() const { return status == ReduceStatus::Ok; }
};

// Applies one inverted G3i rule to the selected sequent. The state is only
// changed when the outcome is Ok. A step is refused as a Cycle when a sequent
// it would create equals one of the sequents it descends from.
ReduceOutcome reduce(SequentListState& state, const ReductionStep& step);

// Rewrites <-> into a conjunction of implications and checks that the formula
// is propositional (second-order variables, _|_, &, v, ->). Negation is
// already A -> _|_.
Expr negation_expand(const Expr& f);

// Searches for a closing history, always working on sequent 0. Returns
// nothing when the formula is not intuitionistically valid.
std::optional<std::vector<ReductionStep>> auto_prove(const Expr& goal);

// Linear sequent proof, premises first, each line "n. Γ => C Rule parents".
// Throws Error when the history does not close the initial state.
std::vector<std::string> reconstruct(const Expr& goal, const std::vector<ReductionStep>& history);

}  // namespace ndk::gentzen
