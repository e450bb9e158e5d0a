#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ndk/error.hpp"
#include "ndk/gentzen.hpp"
#include "ndk/service.hpp"
#include "ndk/shell.hpp"
#include "ndk/theory.hpp"

namespace {

int repl(const std::string& env_file, const std::string& dir, bool echo, bool fail_fast) {
  ndk::Session session(dir);
  if (!env_file.empty()) {
    try {
      session.load(ndk::read_theorem_file(env_file));
    } catch (const ndk::Error& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }
  const bool tty = isatty(STDIN_FILENO);
  std::string line;
  std::size_t lineno = 0;
  int status = 0;
  while (true) {
    if (tty) std::cout << ">>> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.substr(first) == "exit()" || line.substr(first) == "quit()") break;
    if (echo) std::cout << ">>> " << line.substr(first) << "\n";
    ndk::CommandResult r = session.dispatch(line);
    const std::string& text = r.ok ? r.output : r.message;
    if (!text.empty()) std::cout << text << "\n";
    if (!r.ok) {
      status = 1;
      if (fail_fast) {
        std::cerr << "line " << lineno << ": " << r.message << "\n";
        return 1;
      }
    }
  }
  return fail_fast ? 0 : status;
}

int check(const std::string& dir, std::vector<std::string> names) {
  try {
    if (names.empty()) names = ndk::theorem_names(dir);
    ndk::TheoryReport rep = ndk::check_theory(dir, names);
    for (const auto& item : rep.items) std::cout << item.text() << "\n";
    std::cout << (rep.passed() ? "all theorems verified" : "verification failed") << "\n";
    return rep.passed() ? 0 : 1;
  } catch (const ndk::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

int autoprove(const std::string& text) {
  ndk::Session session;
  ndk::CommandResult r = session.execute("Auto", nlohmann::json::array({text}));
  if (!r.ok) {
    std::cerr << r.message << "\n";
    return 2;
  }
  if (r.output != "True") {
    std::cout << "not intuitionistically valid\n";
    return 1;
  }
  std::cout << session.execute("Prove", nlohmann::json::array()).output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ndkernel: natural deduction kernel, theory checker and sequent prover"};
  app.require_subcommand(1);

  std::string env_file, dir = ".";
  bool echo = false, fail_fast = false;
  auto* repl_cmd = app.add_subcommand("repl", "read commands in call notation from standard input");
  repl_cmd->add_option("--env", env_file, "theorem file to start from");
  repl_cmd->add_option("--dir", dir, "theory directory for Load and Save");
  repl_cmd->add_flag("--echo", echo, "print each command before its output");
  repl_cmd->add_flag("--fail-fast", fail_fast, "stop with status 1 at the first failing command");

  std::string check_dir;
  std::vector<std::string> names;
  auto* check_cmd = app.add_subcommand("check", "replay theorems and require Qed on each last line");
  check_cmd->add_option("THEORY_DIR", check_dir)->required();
  check_cmd->add_option("names", names, "theorem names (default: every proof in the directory)");

  std::string formula;
  auto* auto_cmd = app.add_subcommand("auto", "search for an intuitionistic sequent proof");
  auto_cmd->add_option("FORMULA", formula)->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string serve_dir = ".";
  auto* serve_cmd = app.add_subcommand("serve", "run the JSON session service");
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--dir", serve_dir, "theory directory");

  CLI11_PARSE(app, argc, argv);

  if (*repl_cmd) return repl(env_file, dir, echo, fail_fast);
  if (*check_cmd) return check(check_dir, names);
  if (*auto_cmd) return autoprove(formula);
  if (*serve_cmd) {
    ndk::Service service(serve_dir);
    std::cerr << "listening on " << host << ":" << port << "\n";
    if (!service.listen(host, port)) {
      std::cerr << "cannot listen on " << host << ":" << port << "\n";
      return 1;
    }
  }
  return 0;
}
