#include "ndk/theory.hpp"

#include <algorithm>

#include "ndk/error.hpp"
#include "ndk/syntax.hpp"

namespace ndk {

const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Qed: return "qed";
    case CheckStatus::NotQed: return "not qed";
    case CheckStatus::Failed: return "failed";
    case CheckStatus::LoadError: return "load error";
  }
  return "?";
}

std::string TheoremCheck::text() const {
  std::string out = name + " : " + check_status_name(status);
  if (!message.empty()) out += ": " + message;
  return out;
}

bool TheoryReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const TheoremCheck& c) { return c.passed(); });
}

TheoremCheck check_record(const TheoremRecord& rec) {
  TheoremCheck out;
  out.name = rec.name;
  if (rec.log.empty()) {
    out.status = CheckStatus::NotQed;
    out.message = "no proof";
    return out;
  }
  ReplayResult r = replay_log(rec.env, rec.log);
  if (!r.ok) {
    out.status = CheckStatus::Failed;
    out.failed_entry = r.failed_entry;
    out.message = r.error;
    return out;
  }
  const Expr& last = r.proof.lines().back().formula;
  out.conclusion = rec.env.show(last);
  if (rec.conclusion && !alpha_equal(*rec.conclusion, last)) {
    out.status = CheckStatus::Failed;
    out.message = "last line does not match the recorded conclusion";
    return out;
  }
  if (!r.qed.value_or(false)) {
    out.status = CheckStatus::NotQed;
    out.message = "line " + std::to_string(r.proof.size() - 1) + " rests on hypotheses";
    return out;
  }
  out.status = CheckStatus::Qed;
  return out;
}

TheoremCheck check_theorem(const std::filesystem::path& dir, const std::string& name) {
  TheoremRecord rec;
  try {
    rec = read_theorem_file(theorem_path(dir, name));
  } catch (const Error& e) {
    TheoremCheck out;
    out.name = name;
    out.status = CheckStatus::LoadError;
    out.message = e.what();
    return out;
  }
  TheoremCheck out = check_record(rec);
  out.name = name;
  return out;
}

TheoryReport check_theory(const std::filesystem::path& dir, const std::vector<std::string>& names) {
  TheoryReport rep;
  for (const auto& n : names) rep.items.push_back(check_theorem(dir, n));
  return rep;
}

std::vector<std::string> theorem_names(const std::filesystem::path& dir) {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    try {
      TheoremRecord rec = read_theorem_file(entry.path());
      if (!rec.log.empty()) out.push_back(entry.path().stem().string());
    } catch (const Error&) {
      // unreadable files are reported when named explicitly
      out.push_back(entry.path().stem().string());
    }
  }
  if (ec) throw EnvironmentError("cannot read theory directory " + dir.string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ndk
