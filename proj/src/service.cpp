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


#include "linerguide/service.hpp"

#include <chrono>
#include <cstdio>
#include <utility>

#include "linerguide/error.hpp"
#include "linerguide/serialize.hpp"

namespace linerguide {
namespace {

using nlohmann::json;

std::pair<int, int> parse_image(const json& image) {
  if (!image.is_object() || !image.contains("w") || !image.contains("h") ||
      !image.at("w").is_number_integer() || !image.at("h").is_number_integer()) {
    throw Error(ErrorCode::kBadConfig, "image must be {\"w\": int, \"h\": int}");
  }
  const int w = image.at("w").get<int>();
  const int h = image.at("h").get<int>();
  if (w <= 0 || h <= 0) throw Error(ErrorCode::kBadConfig, "image size must be positive");
  return {w, h};
}

}  // namespace

std::string_view session_state_name(SessionState s) {
  return s == SessionState::kLive ? "live" : "frozen";
}

json error_message(ErrorCode code, std::string_view message) {
  return {{"type", "error"}, {"code", error_code_name(code)}, {"message", message}};
}

Session::Session(std::string id, EngineConfig config, int image_width, int image_height)
    : id_(std::move(id)),
      config_(std::move(config)),
      image_width_(image_width),
      image_height_(image_height) {}

GuidanceFrame Session::submit_frame(const FaceMeshFrame& frame) {
  std::lock_guard lock(mu_);
  const auto start = std::chrono::steady_clock::now();
  const ShapeAnalysis* frozen = state_ == SessionState::kFrozen ? &*frozen_ : nullptr;
  GuidanceFrame out;
  try {
    out = process_frame(frame, config_, frozen);
  } catch (...) {
    ++stats_.frames_processed;
    throw;
  }
  const auto stop = std::chrono::steady_clock::now();
  ++stats_.frames_processed;
  stats_.last_latency_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  if (!out.status.detection_ok) {
    ++stats_.detection_failures;
  } else if (!frozen) {
    last_good_ = out.analysis;
  }
  return out;
}

void Session::freeze() {
  std::lock_guard lock(mu_);
  if (state_ == SessionState::kFrozen) return;
  if (!last_good_) {
    throw Error(ErrorCode::kNothingToFreeze, "no successfully analyzed frame to freeze");
  }
  frozen_ = last_good_;
  state_ = SessionState::kFrozen;
}

void Session::unfreeze() {
  std::lock_guard lock(mu_);
  state_ = SessionState::kLive;
  frozen_.reset();
}

SessionState Session::state() const {
  std::lock_guard lock(mu_);
  return state_;
}

std::optional<ShapeAnalysis> Session::frozen_analysis() const {
  std::lock_guard lock(mu_);
  return frozen_;
}

SessionStats Session::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

void Session::record_dropped(std::uint64_t n) {
  std::lock_guard lock(mu_);
  stats_.frames_dropped += n;
}

std::pair<int, int> Session::image_size() const {
  std::lock_guard lock(mu_);
  return {image_width_, image_height_};
}

void Session::set_image_size(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kBadConfig, "image size must be positive");
  }
  std::lock_guard lock(mu_);
  image_width_ = width;
  image_height_ = height;
}

FaceMeshFrame Session::frame_from_message(const json& msg) {
  if (msg.contains("image")) {
    try {
      const auto [w, h] = parse_image(msg.at("image"));
      set_image_size(w, h);
    } catch (const Error& e) {
      throw Error(ErrorCode::kSchemaError, e.what());
    }
  }
  const auto [w, h] = image_size();
  return frame_from_json(msg, w, h);
}

json Session::handle_message(const json& msg) {
  try {
    if (!msg.is_object() || !msg.contains("type") || !msg.at("type").is_string()) {
      throw Error(ErrorCode::kSchemaError, "message must be an object with a string \"type\"");
    }
    const std::string type = msg.at("type").get<std::string>();
    if (type == "frame") return guidance_message(submit_frame(frame_from_message(msg)));
    if (type == "freeze") {
      freeze();
      return state_message();
    }
    if (type == "unfreeze") {
      unfreeze();
      return state_message();
    }
    throw Error(ErrorCode::kSchemaError, "unknown message type \"" + type + "\"");
  } catch (const Error& e) {
    return error_message(e.code(), e.what());
  }
}

json Session::handle_message(std::string_view text) {
  json msg;
  try {
    msg = json::parse(text);
  } catch (const json::parse_error& e) {
    return error_message(ErrorCode::kSchemaError,
                         "JSON parse error at byte " + std::to_string(e.byte));
  }
  return handle_message(msg);
}

json Session::state_message() const {
  std::lock_guard lock(mu_);
  json msg = {{"type", "state"}, {"state", session_state_name(state_)}};
  if (frozen_) {
    const FaceAnalysis& f = frozen_->features;
    msg["labels"] = {
        {"left", {{"size", label_name(f.left_labels.size)}, {"turn", label_name(f.left_labels.turn)}}},
        {"right",
         {{"size", label_name(f.right_labels.size)}, {"turn", label_name(f.right_labels.turn)}}},
        {"spacing", label_name(f.left_labels.spacing)}};
  }
  return msg;
}

json Session::stats_json() const {
  std::lock_guard lock(mu_);
  return {{"id", id_},
          {"state", session_state_name(state_)},
          {"frames_processed", stats_.frames_processed},
          {"frames_dropped", stats_.frames_dropped},
          {"detection_failures", stats_.detection_failures},
          {"last_latency_ms", stats_.last_latency_ms}};
}

SessionManager::SessionManager(EngineConfig base, std::uint64_t seed)
    : base_(std::move(base)), rng_(seed) {}

std::string SessionManager::next_id() {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
  return buf;
}

std::shared_ptr<Session> SessionManager::open_session(const json& overrides) {
  int w = kDefaultImageWidth;
  int h = kDefaultImageHeight;
  json rest = overrides;
  if (rest.is_object() && rest.contains("image")) {
    std::tie(w, h) = parse_image(rest.at("image"));
    rest.erase("image");
  }
  EngineConfig cfg;
  try {
    cfg = apply_overrides(base_, rest);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBadConfig) throw;
    throw Error(ErrorCode::kBadConfig, e.what());
  }
  std::lock_guard lock(mu_);
  std::string id;
  do {
    id = next_id();
  } while (sessions_.count(id) != 0);
  auto session = std::make_shared<Session>(id, std::move(cfg), w, h);
  sessions_.emplace(id, session);
  return session;
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::kUnknownSession, "unknown session " + id);
  return it->second;
}

bool SessionManager::close(const std::string& id) {
  std::lock_guard lock(mu_);
  return sessions_.erase(id) != 0;
}

std::size_t SessionManager::size() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

}  // namespace linerguide
