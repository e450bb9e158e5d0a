#include "ndk/shell.hpp"

#include <cctype>
#include <functional>
#include <map>

#include "ndk/error.hpp"
#include "ndk/syntax.hpp"
#include "ndk/theory.hpp"

namespace ndk {

using nlohmann::json;

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Python literals to JSON: True/False/None, single-quoted strings, and the
// gentzen transcripts' leading "State," argument dropped.
std::string to_json_text(const std::string& inner, std::size_t base) {
  std::string out;
  std::size_t i = 0;
  while (i < inner.size()) {
    char c = inner[i];
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < inner.size() && inner[j] != '"') j += inner[j] == '\\' ? 2 : 1;
      if (j >= inner.size()) throw SyntaxError("unterminated string", base + i);
      out += inner.substr(i, j - i + 1);
      i = j + 1;
    } else if (c == '\'') {
      std::size_t j = i + 1;
      std::string raw;
      while (j < inner.size() && inner[j] != '\'') raw += inner[j++];
      if (j >= inner.size()) throw SyntaxError("unterminated string", base + i);
      out += json(raw).dump();
      i = j + 1;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < inner.size() && ident_char(inner[j])) ++j;
      std::string word = inner.substr(i, j - i);
      if (word == "True") out += "true";
      else if (word == "False") out += "false";
      else if (word == "None") out += "null";
      else if (word == "State" && out.find_first_not_of(" \t") == std::string::npos) {
        while (j < inner.size() && std::isspace(static_cast<unsigned char>(inner[j]))) ++j;
        if (j < inner.size() && inner[j] == ',') ++j;
      } else {
        throw SyntaxError("unexpected name '" + word + "' (strings must be quoted)", base + i);
      }
      i = j;
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

}  // namespace

Call parse_call(const std::string& line) {
  const std::string s = trim(line);
  std::size_t i = 0;
  while (i < s.size() && (ident_char(s[i]) || s[i] == '.')) ++i;
  if (i == 0 || !ident_start(s[0])) throw SyntaxError("expected a command name", 0);
  Call call;
  call.name = s.substr(0, i);
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i >= s.size() || s[i] != '(') throw SyntaxError("expected '(' after " + call.name, i);
  if (s.back() != ')') throw SyntaxError("expected ')' at end of command", s.size());
  const std::string inner = s.substr(i + 1, s.size() - i - 2);
  const std::string text = "[" + to_json_text(inner, i + 1) + "]";
  try {
    call.args = json::parse(text);
  } catch (const json::parse_error&) {
    throw SyntaxError("malformed arguments to " + call.name, i + 1);
  }
  return call;
}

const std::vector<CommandSpec>& command_table() {
  static const std::vector<CommandSpec> table = {
      {"Load", {"name"}, "load an environment or theorem from the theory directory"},
      {"Save", {"name"}, "save the environment and proof log"},
      {"NewAx", {"formula"}, "append an axiom"},
      {"AddTheorem", {"formula"}, "append an assumed theorem"},
      {"NewDefEq", {"equation"}, "append a defining equation"},
      {"NewDef", {"predicate", "params", "formula"}, "define a declared predicate"},
      {"AddPredicate", {"name", "arity", "prefix"}, "declare a predicate"},
      {"AddFunction", {"name", "arity", "prefix"}, "declare a function"},
      {"AddConstants", {"names"}, "declare constants"},
      {"AddVariables", {"names"}, "declare variables"},
      {"PrettyPrint", {"name", "display"}, "set the display string of a symbol"},
      {"SetClassGuard", {"predicate"}, "guard predicate used by the class rules"},
      {"ViewTheorem", {"name"}, "show the conclusion of a saved theorem"},
      {"LoadTheorem", {"name"}, "append a saved theorem's conclusion to the theorems"},
      {"ViewTheory", {"dir?"}, "show the conclusions of all theorems in a directory"},
      {"CheckTheory", {"names"}, "replay saved theorems and require Qed"},
      {"ShowProof", {}, "proof listing"},
      {"ShowLog", {}, "rule log"},
      {"ShowAxioms", {}, "axioms"},
      {"ShowTheorems", {}, "assumed theorems"},
      {"ShowDefEquations", {}, "defining equations"},
      {"ShowDefinitions", {}, "predicate definitions"},
      {"Hypotheses", {"line"}, "undischarged hypotheses of a line"},
      {"Qed", {"line"}, "mark a line that rests on no hypotheses"},
      {"Undo", {}, "remove the last line"},
      {"Clear", {}, "remove all lines"},
      {"GenerateProof", {}, "rebuild the proof from its log"},
      {"UsedTheorems", {}, "assumed theorems cited by the log"},
      {"Auto", {"formula"}, "search for a sequent proof of a propositional formula"},
      {"Prove", {}, "show the history found by Auto and its sequent proof"},
      {"Display", {}, "show the sequent list"},
  };
  return table;
}

namespace {

struct Args {
  const std::string& cmd;
  const json& a;

  void expect(std::size_t lo, std::size_t hi) const {
    if (a.size() < lo || a.size() > hi) {
      std::string n = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
      throw Error(cmd + " expects " + n + " argument(s)");
    }
  }
  void expect(std::size_t n) const { expect(n, n); }

  [[noreturn]] void bad(std::size_t i, const char* what) const {
    throw Error(cmd + ": argument " + std::to_string(i + 1) + " must be " + what);
  }
  std::string str(std::size_t i) const {
    if (!a[i].is_string()) bad(i, "a string");
    return a[i].get<std::string>();
  }
  std::size_t index(std::size_t i) const {
    if (!a[i].is_number_integer() || a[i].get<long long>() < 0) bad(i, "a non-negative integer");
    return a[i].get<std::size_t>();
  }
  int arity(std::size_t i) const {
    if (!a[i].is_number_integer()) bad(i, "an integer");
    return a[i].get<int>();
  }
  bool flag(std::size_t i) const {
    if (!a[i].is_boolean()) bad(i, "True or False");
    return a[i].get<bool>();
  }
  std::vector<std::string> strings(std::size_t i) const {
    if (a[i].is_string()) return {a[i].get<std::string>()};
    if (!a[i].is_array()) bad(i, "a list of strings");
    std::vector<std::string> out;
    for (const auto& x : a[i]) {
      if (!x.is_string()) bad(i, "a list of strings");
      out.push_back(x.get<std::string>());
    }
    return out;
  }
};

std::string numbered(const ProofEnvironment& env, const std::vector<Expr>& list) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) out += std::to_string(i) + ". " + env.show(list[i]) + " \n";
  return out;
}

std::string definitions_text(const ProofEnvironment& env) {
  std::string out;
  for (const auto& d : env.definitions) out += env.show(Expr::iff(d.head(), d.body)) + "\n";
  return out;
}

bool is_reduction_name(const std::string& name) {
  static const char* names[] = {"rand", "ror1", "ror2", "rimp", "land", "lor", "limp", "labs", "ax"};
  for (const char* n : names)
    if (name == n) return true;
  return false;
}

std::filesystem::path resolve_dir(const std::filesystem::path& base, const std::string& arg) {
  std::filesystem::path p(arg);
  if (p.is_absolute()) return p;
  if (std::filesystem::is_directory(base / p)) return base / p;
  if (std::filesystem::is_directory(base.parent_path() / p)) return base.parent_path() / p;
  return p;
}

TheoremRecord record_of(const Session::State& st, const std::string& name) {
  TheoremRecord rec{name, st.proof.env(), st.proof.log(), std::nullopt};
  if (st.proof.size() > 0) rec.conclusion = st.proof.lines().back().formula;
  return rec;
}

}  // namespace

Proof restore(const TheoremRecord& rec) {
  ReplayResult rr = replay_log(rec.env, rec.log);
  if (!rr.ok) throw Error("cannot replay " + rec.name + ": " + rr.error);
  return std::move(rr.proof);
}

Session::Session(std::filesystem::path dir) : dir_(std::move(dir)), st_{Proof(), "", {}, {}, {}} {}

void Session::load(const TheoremRecord& rec) {
  st_.proof = restore(rec);
  st_.theorem_name = rec.name;
}

void Session::reset(ProofEnvironment env) {
  st_.proof = Proof(std::move(env));
  st_.theorem_name.clear();
}

TheoremRecord Session::record(const std::string& name) const {
  return record_of(st_, name);
}

CommandResult Session::dispatch(const std::string& line) {
  Call call;
  try {
    call = parse_call(line);
  } catch (const Error& e) {
    CommandResult r{false, "", e.what(), false};
    transcript_.push_back({trim(line), false, r.message});
    return r;
  }
  CommandResult r = execute(call.name, call.args);
  transcript_.back().command = trim(line);
  return r;
}

CommandResult Session::execute(const std::string& name, const json& args) {
  CommandResult r;
  State work = st_;
  try {
    if (!args.is_array()) throw Error(name + ": arguments must be a list");
    r.output = run(work, name, args, r.mutated);
    while (!r.output.empty() && r.output.back() == '\n') r.output.pop_back();
    st_ = std::move(work);
  } catch (const std::exception& e) {
    r = CommandResult{false, "", e.what(), false};
  }
  transcript_.push_back({invocation_text({name, args}), r.ok, r.ok ? r.output : r.message});
  return r;
}

std::string Session::run(State& st, const std::string& name, const json& args, bool& mutated) const {
  Args a{name, args};
  Proof& proof = st.proof;
  ProofEnvironment& env = proof.env();

  if (find_rule(name)) {
    proof.apply(name, args);
    mutated = true;
    return proof.listing() + "True";
  }

  if (is_reduction_name(name)) {
    if (!st.sequents) throw Error("no goal; use Auto first");
    std::string text = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) text += (i ? "," : "") + args[i].dump();
    gentzen::ReductionStep step = gentzen::ReductionStep::parse(text + ")");
    gentzen::ReduceOutcome out = gentzen::reduce(*st.sequents, step);
    if (!out.ok()) throw Error(out.message);
    mutated = true;
    return st.sequents->display();
  }

  using Handler = std::function<std::string()>;
  auto env_change = [&](auto&& f) {
    f();
    mutated = true;
    return std::string("True");
  };

  const std::map<std::string, Handler> table = {
      {"Load",
       [&] {
         a.expect(1);
         const std::string n = a.str(0);
         st.proof = restore(read_theorem_file(theorem_path(dir_, n)));
         st.theorem_name = n;
         mutated = true;
         return std::string("True");
       }},
      {"Save",
       [&] {
         a.expect(1);
         const std::string n = a.str(0);
         write_theorem_file(theorem_path(dir_, n), record_of(st, n));
         st.theorem_name = n;
         return std::string("True");
       }},
      {"NewAx", [&] { a.expect(1); return env_change([&] { env.add_axiom(a.str(0)); }); }},
      {"AddTheorem", [&] { a.expect(1); return env_change([&] { env.add_theorem(a.str(0)); }); }},
      {"NewDefEq", [&] { a.expect(1); return env_change([&] { env.new_def_eq(a.str(0)); }); }},
      {"NewDef",
       [&] {
         a.expect(3);
         return env_change([&] { env.new_def(a.str(0), a.strings(1), a.str(2)); });
       }},
      {"AddPredicate",
       [&] {
         a.expect(3);
         return env_change([&] { env.signature.add_predicate(a.str(0), a.arity(1), !a.flag(2)); });
       }},
      {"AddFunction",
       [&] {
         a.expect(3);
         return env_change([&] { env.signature.add_function(a.str(0), a.arity(1), !a.flag(2)); });
       }},
      {"AddConstants",
       [&] {
         a.expect(1);
         return env_change([&] {
           for (const auto& c : a.strings(0)) env.signature.add_constant(c);
         });
       }},
      {"AddVariables",
       [&] {
         a.expect(1);
         return env_change([&] {
           for (const auto& v : a.strings(0)) env.signature.add_variable(v);
         });
       }},
      {"PrettyPrint",
       [&] {
         a.expect(2);
         return env_change([&] {
           const std::string sym = a.str(0);
           if (!env.signature.kind_of(sym)) throw EnvironmentError("'" + sym + "' is not declared");
           env.signature.set_pretty(sym, a.str(1));
         });
       }},
      {"SetClassGuard",
       [&] {
         a.expect(1);
         return env_change([&] {
           const std::string p = a.str(0);
           const SymbolInfo* info = env.signature.predicate(p);
           if (!info || info->arity != 1) throw EnvironmentError("'" + p + "' is not a unary predicate");
           env.class_guard = p;
         });
       }},
      {"ViewTheorem",
       [&] {
         a.expect(1);
         const std::string n = a.str(0);
         TheoremRecord rec = read_theorem_file(theorem_path(dir_, n));
         if (!rec.conclusion) throw Error(n + " holds no proof");
         return n + " : " + rec.env.show(*rec.conclusion);
       }},
      {"LoadTheorem",
       [&] {
         a.expect(1);
         const std::string n = a.str(0);
         TheoremRecord rec = read_theorem_file(theorem_path(dir_, n));
         TheoremCheck c = check_record(rec);
         if (!c.passed()) throw Error(n + " is not proved: " + c.text());
         const Expr concl = *rec.conclusion;
         if (!is_logical_validity_shape(concl) &&
             !(env.compatible_with(rec.env) && env.class_guard == rec.env.class_guard))
           throw EnvironmentError(n + " was proved in a different environment");
         env.add_theorem(concl);
         mutated = true;
         return std::string("True");
       }},
      {"ViewTheory",
       [&] {
         a.expect(0, 1);
         const std::filesystem::path d = args.empty() ? dir_ : resolve_dir(dir_, a.str(0));
         std::string out;
         for (const auto& n : theorem_names(d)) {
           try {
             TheoremRecord rec = read_theorem_file(theorem_path(d, n));
             if (rec.conclusion) out += n + " : " + rec.env.show(*rec.conclusion) + "\n";
           } catch (const Error& e) {
             out += n + " : " + e.what() + "\n";
           }
         }
         return out;
       }},
      {"CheckTheory",
       [&] {
         a.expect(1);
         TheoryReport rep = check_theory(dir_, a.strings(0));
         std::string out;
         for (const auto& item : rep.items) out += item.text() + "\n";
         return out + (rep.passed() ? "True" : "False");
       }},
      {"ShowProof", [&] { a.expect(0); return proof.listing(); }},
      {"ShowLog", [&] { a.expect(0); return proof.log_text(); }},
      {"ShowAxioms", [&] { a.expect(0); return numbered(env, env.axioms); }},
      {"ShowTheorems", [&] { a.expect(0); return numbered(env, env.theorems); }},
      {"ShowDefEquations", [&] { a.expect(0); return numbered(env, env.def_equations); }},
      {"ShowDefinitions", [&] { a.expect(0); return definitions_text(env); }},
      {"Hypotheses",
       [&] {
         a.expect(1);
         std::string out;
         for (auto h : proof.hypotheses(a.index(0))) out += proof.line_text(h) + "\n";
         return out;
       }},
      {"Qed",
       [&] {
         a.expect(1);
         if (!proof.qed(a.index(0))) return std::string("False");
         mutated = true;
         return proof.listing() + "True";
       }},
      {"Undo",
       [&] {
         a.expect(0);
         proof.undo();
         mutated = true;
         return proof.listing() + "True";
       }},
      {"Clear",
       [&] {
         a.expect(0);
         proof.clear();
         mutated = true;
         return std::string("True");
       }},
      {"GenerateProof",
       [&] {
         a.expect(0);
         ReplayResult rr = replay_log(env, proof.log());
         if (!rr.ok) throw Error(rr.error);
         proof = std::move(rr.proof);
         mutated = true;
         return proof.listing() + "True";
       }},
      {"UsedTheorems",
       [&] {
         a.expect(0);
         std::string out = "[";
         for (auto n : proof.used_theorems()) out += (out.size() > 1 ? ", " : "") + std::to_string(n);
         return out + "]";
       }},
      {"Auto",
       [&] {
         a.expect(1);
         Expr goal = env.parse(a.str(0));
         st.sequents = gentzen::SequentListState::initial(goal);
         st.goal = goal;
         st.found = gentzen::auto_prove(goal);
         mutated = true;
         return std::string(st.found ? "True" : "False");
       }},
      {"Prove",
       [&] {
         a.expect(0);
         if (!st.goal) throw Error("no goal; use Auto first");
         if (!st.found) throw Error("no intuitionistic proof of the goal");
         std::string out;
         gentzen::SequentListState replay = gentzen::SequentListState::initial(*st.goal);
         for (std::size_t i = 0; i < st.found->size(); ++i) {
           const gentzen::ReductionStep& step = (*st.found)[i];
           out += std::to_string(i + 1) + ". " + step.text();
           if (step.rule == gentzen::Rule::ax) out += "   " + replay.sequents()[step.sequent].text();
           out += "\n";
           gentzen::reduce(replay, step);
         }
         out += "\n";
         for (const auto& l : gentzen::reconstruct(*st.goal, *st.found)) out += l + "\n";
         return out;
       }},
      {"Display",
       [&] {
         a.expect(0);
         if (!st.sequents) throw Error("no goal; use Auto first");
         return st.sequents->display();
       }},
  };

  std::string key = name == "State.display" ? "Display" : name;
  auto it = table.find(key);
  if (it == table.end()) throw Error("unknown command '" + name + "'");
  return it->second();
}

}  // namespace ndk
