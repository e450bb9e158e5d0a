#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ndk/gentzen.hpp"
#include "ndk/proof.hpp"

namespace ndk {

// A command in call notation: Name(arg, ...) with JSON-like arguments.
// Python's True/False are accepted as booleans.
struct Call {
  std::string name;
  nlohmann::json args = nlohmann::json::array();
};

// Throws SyntaxError when the line is not in call notation.
Call parse_call(const std::string& line);

struct CommandResult {
  bool ok = true;
  std::string output;   // what the REPL prints
  std::string message;  // error text when !ok
  bool mutated = false;
};

struct CommandSpec {
  std::string name;
  std::vector<std::string> params;
  std::string summary;
};

// Rebuilds a stored theorem's proof from its log.
Proof restore(const TheoremRecord& rec);

// Shell commands other than the kernel rules.
const std::vector<CommandSpec>& command_table();

// One interactive proof: environment, proof, the automatic prover's state
// and the theory directory used by Load/Save.
class Session {
 public:
  explicit Session(std::filesystem::path dir = ".");

  // Runs one command. Failures leave the session exactly as it was.
  CommandResult dispatch(const std::string& line);
  CommandResult execute(const std::string& name, const nlohmann::json& args);

  const Proof& proof() const { return st_.proof; }
  const ProofEnvironment& env() const { return st_.proof.env(); }
  const std::filesystem::path& dir() const { return dir_; }
  const std::string& theorem_name() const { return st_.theorem_name; }

  struct TranscriptEntry {
    std::string command;
    bool ok;
    std::string output;
  };
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }

  // Replaces environment and proof wholesale, as Load does. Throws when the
  // record's log does not replay.
  void load(const TheoremRecord& rec);
  void reset(ProofEnvironment env);
  TheoremRecord record(const std::string& name) const;

  struct State {
    Proof proof;
    std::string theorem_name;
    std::optional<Expr> goal;
    std::optional<gentzen::SequentListState> sequents;
    std::optional<std::vector<gentzen::ReductionStep>> found;
  };

 private:
  std::string run(State& st, const std::string& name, const nlohmann::json& args, bool& mutated) const;

  std::filesystem::path dir_;
  State st_;
  std::vector<TranscriptEntry> transcript_;
};

}  // namespace ndk
