#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "ndk/theorem_file.hpp"

#ifndef NDK_SOURCE_DIR
#error "NDK_SOURCE_DIR must point at the source tree"
#endif

namespace fixtures {

inline std::filesystem::path theory_dir(const std::string& theory) {
  return std::filesystem::path(NDK_SOURCE_DIR) / "theories" / theory;
}

inline ndk::TheoremRecord record(const std::string& theory, const std::string& name) {
  return ndk::read_theorem_file(ndk::theorem_path(theory_dir(theory), name));
}

inline ndk::ProofEnvironment km() { return record("kelley-morse", "Kelley-Morse").env; }

// Removed with everything in it when it goes out of scope.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / ("ndk-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace fixtures
