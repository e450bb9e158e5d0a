#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ndk/environment.hpp"

namespace ndk {

inline constexpr const char* kTheoremFormat = "ndkernel-theorem/1";

// One log entry: rule name plus the arguments exactly as the user gave them.
struct RuleInvocation {
  std::string rule;
  nlohmann::json args = nlohmann::json::array();
  friend bool operator==(const RuleInvocation&, const RuleInvocation&) = default;
};

// Contents of one theorem file. A file holding only an environment has an
// empty log and no conclusion.
struct TheoremRecord {
  std::string name;
  ProofEnvironment env;
  std::vector<RuleInvocation> log;
  std::optional<Expr> conclusion;
};

nlohmann::json signature_to_json(const Signature& sig);
Signature signature_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TheoremRecord& rec);
TheoremRecord record_from_json(const nlohmann::json& j);

// Sorted keys, two-space indent, trailing newline. Byte-stable.
std::string canonical_dump(const nlohmann::json& j);

std::filesystem::path theorem_path(const std::filesystem::path& dir, const std::string& name);
void write_theorem_file(const std::filesystem::path& path, const TheoremRecord& rec);
TheoremRecord read_theorem_file(const std::filesystem::path& path);

}  // namespace ndk
