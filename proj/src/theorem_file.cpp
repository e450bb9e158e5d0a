#include "ndk/theorem_file.hpp"

#include <fstream>
#include <sstream>

#include "ndk/error.hpp"

namespace ndk {

using nlohmann::json;

json signature_to_json(const Signature& sig) {
  json j;
  j["constants"] = sig.constants();
  j["variables"] = sig.variables();
  auto symbols = [](const std::map<std::string, SymbolInfo>& m) {
    json out = json::object();
    for (const auto& [name, info] : m) out[name] = {{"arity", info.arity}, {"infix", info.infix}};
    return out;
  };
  j["functions"] = symbols(sig.functions());
  j["predicates"] = symbols(sig.predicates());
  j["pretty"] = sig.pretty_map();
  return j;
}

Signature signature_from_json(const json& j) {
  Signature sig;
  for (const auto& c : j.at("constants")) sig.add_constant(c.get<std::string>());
  for (const auto& [name, info] : j.at("functions").items())
    sig.add_function(name, info.at("arity").get<int>(), info.at("infix").get<bool>());
  for (const auto& [name, info] : j.at("predicates").items())
    sig.add_predicate(name, info.at("arity").get<int>(), info.at("infix").get<bool>());
  for (const auto& v : j.at("variables")) sig.add_variable(v.get<std::string>());
  for (const auto& [name, display] : j.at("pretty").items()) sig.set_pretty(name, display.get<std::string>());
  return sig;
}

json to_json(const TheoremRecord& rec) {
  const ProofEnvironment& env = rec.env;
  json j;
  j["format"] = kTheoremFormat;
  j["name"] = rec.name;
  j["signature"] = signature_to_json(env.signature);
  auto formulas = [&](const std::vector<Expr>& v) {
    json out = json::array();
    for (const auto& f : v) out.push_back(env.ascii(f));
    return out;
  };
  j["axioms"] = formulas(env.axioms);
  j["theorems"] = formulas(env.theorems);
  j["defEquations"] = formulas(env.def_equations);
  j["definitions"] = json::array();
  for (const auto& d : env.definitions)
    j["definitions"].push_back({{"name", d.name}, {"params", d.params}, {"body", env.ascii(d.body)}});
  j["classGuard"] = env.class_guard;
  j["log"] = json::array();
  for (const auto& inv : rec.log) j["log"].push_back({{"rule", inv.rule}, {"args", inv.args}});
  j["conclusion"] = rec.conclusion ? json(env.ascii(*rec.conclusion)) : json(nullptr);
  return j;
}

TheoremRecord record_from_json(const json& j) {
  try {
    if (!j.is_object()) throw EnvironmentError("schema violation: theorem file must be a JSON object");
    const std::string format = j.at("format").get<std::string>();
    if (format != kTheoremFormat) throw EnvironmentError("unsupported theorem file format '" + format + "'");
    TheoremRecord rec;
    rec.name = j.at("name").get<std::string>();
    ProofEnvironment& env = rec.env;
    env.name = rec.name;
    env.signature = signature_from_json(j.at("signature"));
    env.class_guard = j.at("classGuard").get<std::string>();
    for (const auto& a : j.at("axioms")) env.add_axiom(a.get<std::string>());
    for (const auto& t : j.at("theorems")) env.add_theorem(t.get<std::string>());
    for (const auto& d : j.at("defEquations")) env.new_def_eq(d.get<std::string>());
    for (const auto& d : j.at("definitions"))
      env.new_def(d.at("name").get<std::string>(), d.at("params").get<std::vector<std::string>>(),
                  d.at("body").get<std::string>());
    for (const auto& e : j.at("log")) {
      RuleInvocation inv{e.at("rule").get<std::string>(), e.at("args")};
      if (!inv.args.is_array()) throw EnvironmentError("schema violation: log args must be an array");
      rec.log.push_back(std::move(inv));
    }
    const json& c = j.at("conclusion");
    if (!c.is_null()) rec.conclusion = env.parse(c.get<std::string>());
    return rec;
  } catch (const json::exception& e) {
    throw EnvironmentError(std::string("schema violation: ") + e.what());
  }
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::filesystem::path theorem_path(const std::filesystem::path& dir, const std::string& name) {
  if (name.empty() || name.find('/') != std::string::npos || name.find('\\') != std::string::npos ||
      name == "." || name == "..")
    throw EnvironmentError("invalid theorem name '" + name + "'");
  return dir / (name + ".json");
}

void write_theorem_file(const std::filesystem::path& path, const TheoremRecord& rec) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw EnvironmentError("cannot write " + path.string());
  out << canonical_dump(to_json(rec));
  if (!out) throw EnvironmentError("write failed for " + path.string());
}

TheoremRecord read_theorem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EnvironmentError("no such theorem file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw EnvironmentError("malformed theorem file " + path.string() + ": " + e.what());
  }
  return record_from_json(j);
}

}  // namespace ndk
