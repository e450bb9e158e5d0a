#include "ndk/service.hpp"

#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>

#include "httplib.h"
#include "ndk/error.hpp"
#include "ndk/gentzen.hpp"
#include "ndk/shell.hpp"
#include "ndk/theory.hpp"

namespace ndk {

using nlohmann::json;

json proof_json(const Session& s) {
  const Proof& p = s.proof();
  json lines = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const ProofElement& el = p.line(i);
    auto hyps = p.hypotheses(i);
    lines.push_back({{"index", i},
                     {"formula", p.env().show(el.formula)},
                     {"ascii", p.env().ascii(el.formula)},
                     {"rule", el.rule},
                     {"parents", el.parents},
                     {"discharges", el.discharges},
                     {"dischargedBy", el.discharged_by},
                     {"hypotheses", json(std::vector<std::size_t>(hyps.begin(), hyps.end()))},
                     {"qed", el.qed},
                     {"text", p.line_text(i)}});
  }
  return {{"theorem", s.theorem_name()}, {"lines", lines}};
}

namespace {

json formula_list(const ProofEnvironment& env, const std::vector<Expr>& list) {
  json out = json::array();
  for (std::size_t i = 0; i < list.size(); ++i)
    out.push_back({{"index", i}, {"formula", env.show(list[i])}, {"ascii", env.ascii(list[i])}});
  return out;
}

}  // namespace

json environment_json(const Session& s) {
  const ProofEnvironment& env = s.env();
  json defs = json::array();
  for (const auto& d : env.definitions)
    defs.push_back({{"name", d.name},
                    {"params", d.params},
                    {"formula", env.show(Expr::iff(d.head(), d.body))},
                    {"body", env.ascii(d.body)}});
  return {{"name", env.name},
          {"signature", signature_to_json(env.signature)},
          {"axioms", formula_list(env, env.axioms)},
          {"theorems", formula_list(env, env.theorems)},
          {"defEquations", formula_list(env, env.def_equations)},
          {"definitions", defs},
          {"classGuard", env.class_guard}};
}

json log_json(const Session& s) {
  json out = json::array();
  for (const auto& inv : s.proof().log())
    out.push_back({{"rule", inv.rule}, {"args", inv.args}, {"text", invocation_text(inv)}});
  return {{"log", out}};
}

struct Service::Impl {
  struct Entry {
    std::shared_mutex lock;
    Session session;
    explicit Entry(const std::filesystem::path& dir) : session(dir) {}
  };

  std::filesystem::path dir;
  httplib::Server server;
  std::mutex sessions_lock;
  std::map<std::string, std::shared_ptr<Entry>> sessions;
  std::mt19937_64 rng{std::random_device{}()};

  explicit Impl(std::filesystem::path d) : dir(std::move(d)) { routes(); }

  static void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
  }
  static void fail(httplib::Response& res, int status, const std::string& msg) {
    reply(res, status, {{"error", msg}});
  }

  std::shared_ptr<Entry> find(const std::string& id) {
    std::lock_guard<std::mutex> g(sessions_lock);
    auto it = sessions.find(id);
    return it == sessions.end() ? nullptr : it->second;
  }

  std::string create() {
    std::lock_guard<std::mutex> g(sessions_lock);
    std::string id;
    do {
      char buf[17];
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
      id = buf;
    } while (sessions.count(id));
    sessions.emplace(id, std::make_shared<Entry>(dir));
    return id;
  }

  static bool body_json(const httplib::Request& req, httplib::Response& res, json& out) {
    try {
      out = req.body.empty() ? json::object() : json::parse(req.body);
    } catch (const json::parse_error&) {
      fail(res, 400, "request body is not JSON");
      return false;
    }
    if (!out.is_object()) {
      fail(res, 400, "request body must be a JSON object");
      return false;
    }
    return true;
  }

  json run_command(Entry& e, const std::string& name, const json& args) {
    std::unique_lock<std::shared_mutex> w(e.lock);
    CommandResult r = e.session.execute(name, args);
    return result_json(e, r);
  }

  static json result_json(Entry& e, const CommandResult& r) {
    json out = {{"ok", r.ok}, {"output", r.output}, {"proof", proof_json(e.session)}};
    if (!r.ok) out["message"] = r.message;
    return out;
  }

  template <typename F>
  void with_session(const httplib::Request& req, httplib::Response& res, F&& f) {
    auto e = find(req.matches[1]);
    if (!e) return fail(res, 404, "no such session");
    f(*e);
  }

  void routes() {
    server.Post("/session", [this](const httplib::Request&, httplib::Response& res) {
      reply(res, 201, {{"id", create()}});
    });
    server.Get(R"(/session/([0-9a-f]+)/proof)", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Entry& e) {
        std::shared_lock<std::shared_mutex> r(e.lock);
        reply(res, 200, proof_json(e.session));
      });
    });
    server.Get(R"(/session/([0-9a-f]+)/environment)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 with_session(req, res, [&](Entry& e) {
                   std::shared_lock<std::shared_mutex> r(e.lock);
                   reply(res, 200, environment_json(e.session));
                 });
               });
    server.Get(R"(/session/([0-9a-f]+)/log)", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Entry& e) {
        std::shared_lock<std::shared_mutex> r(e.lock);
        reply(res, 200, log_json(e.session));
      });
    });
    server.Post(R"(/session/([0-9a-f]+)/command)", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Entry& e) {
        json body;
        if (!body_json(req, res, body)) return;
        if (body.contains("line") && body["line"].is_string()) {
          std::unique_lock<std::shared_mutex> w(e.lock);
          CommandResult r = e.session.dispatch(body["line"].get<std::string>());
          return reply(res, 200, result_json(e, r));
        }
        if (!body.contains("command") || !body["command"].is_string())
          return fail(res, 400, "expected {\"command\": name, \"args\": [...]}");
        json args = body.value("args", json::array());
        if (!args.is_array()) return fail(res, 400, "args must be a list");
        reply(res, 200, run_command(e, body["command"].get<std::string>(), args));
      });
    });
    server.Post(R"(/session/([0-9a-f]+)/undo)", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Entry& e) { reply(res, 200, run_command(e, "Undo", json::array())); });
    });
    server.Post(R"(/session/([0-9a-f]+)/save)", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Entry& e) {
        json body;
        if (!body_json(req, res, body)) return;
        if (!body.contains("name") || !body["name"].is_string()) return fail(res, 400, "expected {\"name\": str}");
        reply(res, 200, run_command(e, "Save", json::array({body["name"]})));
      });
    });
    server.Get(R"(/theorem/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string name = req.matches[1];
      try {
        auto path = theorem_path(dir, name);
        TheoremRecord rec = read_theorem_file(path);
        json out = {{"name", name}, {"file", to_json(rec)}, {"conclusion", nullptr}};
        if (rec.conclusion) out["conclusion"] = rec.env.show(*rec.conclusion);
        reply(res, 200, out);
      } catch (const Error& e) {
        fail(res, 404, e.what());
      }
    });
    server.Post("/check", [this](const httplib::Request& req, httplib::Response& res) {
      json body;
      if (!body_json(req, res, body)) return;
      std::vector<std::string> names;
      if (body.contains("names")) {
        if (!body["names"].is_array()) return fail(res, 400, "names must be a list of strings");
        for (const auto& n : body["names"]) {
          if (!n.is_string()) return fail(res, 400, "names must be a list of strings");
          names.push_back(n.get<std::string>());
        }
      }
      TheoryReport rep = check_theory(dir, names);
      json items = json::array();
      for (const auto& it : rep.items) {
        json j = {{"name", it.name},
                  {"status", check_status_name(it.status)},
                  {"message", it.message},
                  {"conclusion", it.conclusion},
                  {"text", it.text()}};
        j["failedEntry"] = it.failed_entry ? json(*it.failed_entry) : json(nullptr);
        items.push_back(j);
      }
      reply(res, 200, {{"passed", rep.passed()}, {"items", items}});
    });
    server.Post("/auto", [](const httplib::Request& req, httplib::Response& res) {
      json body;
      if (!body_json(req, res, body)) return;
      if (!body.contains("formula") || !body["formula"].is_string())
        return fail(res, 400, "expected {\"formula\": str}");
      try {
        ProofEnvironment env = ProofEnvironment::default_environment();
        Expr goal = env.parse(body["formula"].get<std::string>());
        auto found = gentzen::auto_prove(goal);
        json out = {{"proved", found.has_value()}, {"goal", env.show(goal)}};
        json hist = json::array(), lines = json::array();
        if (found) {
          for (const auto& s : *found) hist.push_back(s.text());
          for (const auto& l : gentzen::reconstruct(goal, *found)) lines.push_back(l);
        }
        out["history"] = hist;
        out["reconstruction"] = lines;
        reply(res, 200, out);
      } catch (const Error& e) {
        fail(res, 400, e.what());
      }
    });
    server.Get("/rules", [](const httplib::Request&, httplib::Response& res) {
      json cmds = json::array();
      for (const auto& c : command_table())
        cmds.push_back({{"name", c.name}, {"params", c.params}, {"summary", c.summary}});
      reply(res, 200, {{"rules", rule_manifest()}, {"commands", cmds}});
    });
  }
};

Service::Service(std::filesystem::path theory_dir) : impl_(std::make_unique<Impl>(std::move(theory_dir))) {}
Service::~Service() = default;

bool Service::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int Service::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool Service::run() { return impl_->server.listen_after_bind(); }
void Service::stop() { impl_->server.stop(); }
bool Service::running() const { return impl_->server.is_running(); }

}  // namespace ndk
