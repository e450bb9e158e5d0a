#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "ndk/environment.hpp"
#include "ndk/theorem_file.hpp"

namespace ndk {

struct ProofElement {
  Expr formula = Expr::bottom();
  std::string rule;
  std::vector<std::size_t> parents;
  nlohmann::json params = nlohmann::json::array();
  // On a discharging line: the hypothesis lines it closes.
  std::vector<std::size_t> discharges;
  // On a Hyp line: the later lines that closed it.
  std::vector<std::size_t> discharged_by;
  // Undischarged hypotheses this line rests on, sorted.
  std::vector<std::size_t> live;
  std::size_t pos = 0;
  bool qed = false;
  std::string comment;
};

enum class ParamKind {
  Line,        // index of an earlier proof line
  Formula,     // formula text
  Term,        // term text
  Variable,    // a variable name
  Terms,       // list of term texts (a lone string is accepted)
  Positions,   // list of occurrence indices
  Index,       // index into an environment list
  Predicate,   // predicate name
  SecondOrder  // second-order variable name
};

const char* param_kind_name(ParamKind k);

struct ParamSpec {
  std::string name;
  ParamKind kind;
};

struct RuleSpec {
  std::string name;
  std::vector<ParamSpec> params;
  std::string group;
  std::string summary;
};

const std::vector<RuleSpec>& rule_table();
const RuleSpec* find_rule(const std::string& name);
nlohmann::json rule_manifest();

// A linear natural deduction proof over an environment. Every successful
// rule application appends one line and one log entry.
class Proof {
 public:
  Proof();
  explicit Proof(ProofEnvironment env);

  const ProofEnvironment& env() const { return env_; }
  ProofEnvironment& env() { return env_; }
  const std::vector<ProofElement>& lines() const { return lines_; }
  const std::vector<RuleInvocation>& log() const { return log_; }
  std::size_t size() const { return lines_.size(); }
  const ProofElement& line(std::size_t n) const;

  // Throws RuleError (or SyntaxError for unparsable arguments); the proof is
  // unchanged on failure.
  std::size_t apply(const RuleInvocation& inv);
  std::size_t apply(const std::string& rule, nlohmann::json args);
  std::size_t hyp(const std::string& text);

  std::set<std::size_t> dependency_tree(std::size_t n) const;
  std::set<std::size_t> hypotheses(std::size_t n) const;
  // Marks the line when it rests on no hypothesis.
  bool qed(std::size_t n);
  void undo();
  void clear();
  std::vector<std::size_t> used_theorems() const;

  std::string line_text(std::size_t n) const;
  std::string listing() const;
  std::string log_text() const;

 private:
  friend class RuleApplier;
  ProofEnvironment env_;
  std::vector<ProofElement> lines_;
  std::vector<RuleInvocation> log_;
};

// "Name(arg1,arg2)" with each argument in JSON notation.
std::string invocation_text(const RuleInvocation& inv);

struct ReplayResult {
  Proof proof;
  bool ok = true;
  std::optional<std::size_t> failed_entry;
  std::string error;
  std::optional<bool> qed;  // verdict on the last line; empty for an empty log
};

// Applies the log in order and runs qed on the last line.
ReplayResult replay_log(const ProofEnvironment& env, const std::vector<RuleInvocation>& log);

}  // namespace ndk
