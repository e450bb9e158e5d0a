#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ndk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lexical and grammatical errors. offset is a byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Declaration, definition and persistence failures.
class EnvironmentError : public Error {
 public:
  using Error::Error;
};

// A rule application that the kernel refuses.
class RuleError : public Error {
 public:
  using Error::Error;
};

}  // namespace ndk
