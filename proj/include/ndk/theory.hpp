#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ndk/proof.hpp"

namespace ndk {

enum class CheckStatus { Qed, NotQed, Failed, LoadError };

const char* check_status_name(CheckStatus s);

struct TheoremCheck {
  std::string name;
  CheckStatus status = CheckStatus::LoadError;
  std::optional<std::size_t> failed_entry;
  std::string message;
  std::string conclusion;  // pretty final line, when replay got that far

  bool passed() const { return status == CheckStatus::Qed; }
  std::string text() const;  // "Th4 : qed", "Th9 : failed at entry 3: ..."
};

struct TheoryReport {
  std::vector<TheoremCheck> items;
  bool passed() const;
};

// Replays one stored theorem and requires Qed on its last line plus a final
// formula alpha-equal to the recorded conclusion.
TheoremCheck check_record(const TheoremRecord& rec);
TheoremCheck check_theorem(const std::filesystem::path& dir, const std::string& name);
TheoryReport check_theory(const std::filesystem::path& dir, const std::vector<std::string>& names);

// Names of the files in dir holding a proof (non-empty log), sorted.
std::vector<std::string> theorem_names(const std::filesystem::path& dir);

}  // namespace ndk
