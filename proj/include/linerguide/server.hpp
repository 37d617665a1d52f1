// Copyright 2026 The Linerguide Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef LINERGUIDE_SERVER_HPP_
#define LINERGUIDE_SERVER_HPP_

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "linerguide/config.hpp"
#include "linerguide/service.hpp"

namespace linerguide {

// HTTP and WebSocket endpoints on one port:
//   GET  /health                 {"status":"ok","sessions":n}
//   POST /session                body: overrides; reply {"id","config","image"}
//   GET  /session/<id>/stats     Session::stats_json()
//   DELETE /session/<id>
//   GET  /config/schema          config_schema()
//   GET  /stream?session=<id>    WebSocket upgrade; without an id a session is
//                                opened and announced as {"type":"session","id"}
// Any other GET is served from static_dir when one is set.
struct ServerOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8080;  // 0 picks an ephemeral port
  std::optional<std::filesystem::path> static_dir;
  EngineConfig config = default_engine_config();
  unsigned worker_threads = 2;
};

class BindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Server {
 public:
  // Binds immediately; throws BindError.
  explicit Server(ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  unsigned short port() const;
  SessionManager& sessions();

  // Blocks until stop(), or until SIGINT/SIGTERM when handle_signals is set.
  // Queued frames are processed before returning.
  void run(bool handle_signals = false);
  // Thread-safe; returns immediately.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace linerguide

#endif  // LINERGUIDE_SERVER_HPP_
