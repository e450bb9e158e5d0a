#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "json.hpp"

namespace ndk {

class Session;

// JSON views shared by the service and the CLI.
nlohmann::json proof_json(const Session& s);
nlohmann::json environment_json(const Session& s);
nlohmann::json log_json(const Session& s);

// HTTP front end over Session. Each session is serialized by its own lock;
// reads of one session may run together.
class Service {
 public:
  explicit Service(std::filesystem::path theory_dir);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds and serves until stop(). Returns false when the address is taken.
  bool listen(const std::string& host, int port);
  // Binds to a free port and returns it (or -1); serve with run().
  int bind_any_port(const std::string& host);
  bool run();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ndk
