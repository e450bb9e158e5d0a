#include <thread>

#include "doctest.h"
#include "fixtures.hpp"
#include "httplib.h"
#include "ndk/service.hpp"

using nlohmann::json;

namespace {

// Serves the kelley-morse theory on a free port for the life of the object.
struct Running {
  ndk::Service service{fixtures::theory_dir("kelley-morse")};
  int port = -1;
  std::thread thread;

  Running() {
    port = service.bind_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { service.run(); });
    for (int i = 0; i < 200 && !service.running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  ~Running() {
    service.stop();
    thread.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(30, 0);
    return c;
  }
};

json post(httplib::Client& c, const std::string& path, const json& body, int expect = 200) {
  auto r = c.Post(path, body.dump(), "application/json");
  REQUIRE(r);
  INFO(path, " ", r->body);
  CHECK(r->status == expect);
  return json::parse(r->body);
}

json get(httplib::Client& c, const std::string& path, int expect = 200) {
  auto r = c.Get(path);
  REQUIRE(r);
  INFO(path, " ", r->body);
  CHECK(r->status == expect);
  return json::parse(r->body);
}

std::string new_session(httplib::Client& c) {
  json j = post(c, "/session", json::object(), 201);
  std::string id = j.at("id");
  CHECK(id.size() == 16);
  return id;
}

}  // namespace

TEST_CASE("service sessions and commands") {
  Running srv;
  auto c = srv.client();
  std::string id = new_session(c);
  std::string base = "/session/" + id;

  post(c, base + "/command", {{"command", "Load"}, {"args", {"Kelley-Morse"}}});
  json r = post(c, base + "/command", {{"command", "Hyp"}, {"args", {"Elem(z, union(x,y))"}}});
  CHECK(r["ok"] == true);
  REQUIRE(r["proof"]["lines"].size() == 1);
  json line = r["proof"]["lines"][0];
  CHECK(line["formula"] == "z ε (x ∪ y)");
  CHECK(line["rule"] == "Hyp");
  CHECK(line["text"] == "0. z ε (x ∪ y) Hyp ");
  CHECK(line["hypotheses"] == json::array({0}));

  // the line form is accepted too
  r = post(c, base + "/command", {{"line", "DefEqInt(0)"}});
  CHECK(r["ok"] == true);
  CHECK(r["proof"]["lines"].size() == 2);

  // failures are reported and change nothing
  r = post(c, base + "/command", {{"command", "AndElimL"}, {"args", {0}}});
  CHECK(r["ok"] == false);
  CHECK(r["message"] == "line 0 is not a conjunction");
  CHECK(get(c, base + "/proof")["lines"].size() == 2);

  json log = get(c, base + "/log");
  REQUIRE(log["log"].size() == 2);
  CHECK(log["log"][1]["text"] == "DefEqInt(0)");

  post(c, base + "/undo", json::object());
  CHECK(get(c, base + "/proof")["lines"].size() == 1);

  json env = get(c, base + "/environment");
  CHECK(env["axioms"].size() == 8);
  CHECK(env["defEquations"].size() == 26);
  CHECK(env["classGuard"] == "Set");

  get(c, "/session/0000000000000000/proof", 404);
  auto bad = c.Post(base + "/command", "{nope", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
}

TEST_CASE("service replays a stored proof") {
  Running srv;
  auto c = srv.client();
  std::string base = "/session/" + new_session(c);
  json r = post(c, base + "/command", {{"command", "Load"}, {"args", {"Th4"}}});
  CHECK(r["ok"] == true);
  json lines = r["proof"]["lines"];
  CHECK(lines.size() == 39);
  // only the last line is marked by a replay
  CHECK(lines[38]["qed"] == true);
  CHECK(lines[20]["qed"] == false);
  r = post(c, base + "/command", {{"command", "Qed"}, {"args", {20}}});
  lines = r["proof"]["lines"];
  CHECK(lines[20]["qed"] == true);
  CHECK(lines[20]["formula"] == "(z ε (x ∪ y)) <-> ((z ε x) v (z ε y))");
  CHECK(lines[0]["dischargedBy"] == json::array({5}));
}

TEST_CASE("service theory endpoints") {
  Running srv;
  auto c = srv.client();
  json th = get(c, "/theorem/Th5");
  CHECK(th["conclusion"] == "(x ∪ x) = x");
  get(c, "/theorem/Nope", 404);

  json chk = post(c, "/check", {{"names", {"Th4", "Th5", "Nope"}}});
  CHECK(chk["passed"] == false);
  REQUIRE(chk["items"].size() == 3);
  CHECK(chk["items"][0]["status"] == "qed");
  CHECK(chk["items"][2]["status"] == "load error");
  CHECK(post(c, "/check", {{"names", {"Th4"}}})["passed"] == true);

  json a = post(c, "/auto", {{"formula", "((A v B) -> (B v A))"}});
  CHECK(a["proved"] == true);
  CHECK(a["history"].size() > 0);
  CHECK(post(c, "/auto", {{"formula", "A v neg A"}})["proved"] == false);
  post(c, "/auto", {{"formula", "A &"}}, 400);

  json rules = get(c, "/rules");
  CHECK(rules["rules"].size() >= 30);
  CHECK(rules["commands"].size() > 10);
}

TEST_CASE("service saves into its theory directory") {
  fixtures::TempDir tmp;
  ndk::Service service(tmp.path);
  int port = service.bind_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread t([&] { service.run(); });
  httplib::Client c("127.0.0.1", port);
  std::string base = "/session/" + new_session(c);
  post(c, base + "/command", {{"line", "Hyp(\"A\")"}});
  post(c, base + "/command", {{"line", "ImpInt(0,0)"}});
  post(c, base + "/save", {{"name", "Id"}});
  CHECK(std::filesystem::exists(tmp.path / "Id.json"));
  json th = get(c, "/theorem/Id");
  CHECK(th["conclusion"] == "A -> A");
  service.stop();
  t.join();
}

TEST_CASE("concurrent sessions stay separate") {
  Running srv;
  std::vector<std::thread> workers;
  std::vector<std::size_t> sizes(4);
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      auto c = srv.client();
      auto r = c.Post("/session", "{}", "application/json");
      std::string base = "/session/" + json::parse(r->body)["id"].get<std::string>();
      for (int i = 0; i <= w; ++i)
        c.Post(base + "/command", json{{"line", "Hyp(\"A\")"}}.dump(), "application/json");
      auto p = c.Get(base + "/proof");
      sizes[w] = json::parse(p->body)["lines"].size();
    });
  }
  for (auto& t : workers) t.join();
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3, 4});
}
