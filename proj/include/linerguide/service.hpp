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


#ifndef LINERGUIDE_SERVICE_HPP_
#define LINERGUIDE_SERVICE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "json.hpp"
#include "linerguide/config.hpp"
#include "linerguide/engine.hpp"
#include "linerguide/error.hpp"

namespace linerguide {

enum class SessionState { kLive, kFrozen };

std::string_view session_state_name(SessionState s);  // "live" / "frozen"

struct SessionStats {
  std::uint64_t frames_processed = 0;
  std::uint64_t frames_dropped = 0;
  std::uint64_t detection_failures = 0;
  double last_latency_ms = 0.0;
};

inline constexpr int kDefaultImageWidth = 640;
inline constexpr int kDefaultImageHeight = 480;

// One client's stream. All members are safe to call from any thread; frame
// handling is serialized by an internal mutex.
class Session {
 public:
  Session(std::string id, EngineConfig config, int image_width = kDefaultImageWidth,
          int image_height = kDefaultImageHeight);

  const std::string& id() const { return id_; }
  const EngineConfig& config() const { return config_; }

  GuidanceFrame submit_frame(const FaceMeshFrame& frame);

  // Throws Error(kNothingToFreeze) before the first detection-ok frame.
  // Freezing a frozen session keeps the existing snapshot.
  void freeze();
  void unfreeze();

  SessionState state() const;
  std::optional<ShapeAnalysis> frozen_analysis() const;
  SessionStats stats() const;
  void record_dropped(std::uint64_t n = 1);

  std::pair<int, int> image_size() const;
  void set_image_size(int width, int height);

  // Wire protocol: one client message in, one server message out. Failures
  // become {"type":"error","code":...} replies rather than exceptions.
  nlohmann::json handle_message(const nlohmann::json& msg);
  nlohmann::json handle_message(std::string_view text);

  nlohmann::json state_message() const;
  nlohmann::json stats_json() const;

 private:
  FaceMeshFrame frame_from_message(const nlohmann::json& msg);

  const std::string id_;
  const EngineConfig config_;

  mutable std::mutex mu_;
  int image_width_;
  int image_height_;
  SessionState state_ = SessionState::kLive;
  std::optional<ShapeAnalysis> frozen_;
  std::optional<ShapeAnalysis> last_good_;
  SessionStats stats_;
};

nlohmann::json error_message(ErrorCode code, std::string_view message);

class SessionManager {
 public:
  explicit SessionManager(EngineConfig base = default_engine_config(),
                          std::uint64_t seed = std::random_device{}());

  // Overrides use the apply_overrides layout plus an optional
  // "image": {"w", "h"}. Throws Error(kBadConfig).
  std::shared_ptr<Session> open_session(const nlohmann::json& overrides = nullptr);

  // Throws Error(kUnknownSession).
  std::shared_ptr<Session> find(const std::string& id) const;
  bool close(const std::string& id);
  std::size_t size() const;

  const EngineConfig& base_config() const { return base_; }

 private:
  std::string next_id();

  const EngineConfig base_;
  mutable std::mutex mu_;
  std::mt19937_64 rng_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace linerguide

#endif  // LINERGUIDE_SERVICE_HPP_
