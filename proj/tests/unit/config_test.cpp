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


#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "linerguide/config.hpp"
#include "linerguide/error.hpp"

namespace lg = linerguide;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

lg::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const lg::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return lg::ErrorCode::kSchemaError;
}

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("linerguide_config_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("defaults carry the published thresholds") {
  const lg::EngineConfig& cfg = lg::default_engine_config();
  CHECK(cfg.classifier.a_low == 2.75);
  CHECK(cfg.classifier.a_high == 3.00);
  CHECK(cfg.classifier.spacing_lo == 0.95);
  CHECK(cfg.classifier.spacing_hi == 1.05);
  CHECK(cfg.classifier.turn_tiebreak == lg::TurnLabel::kUpturned);
  CHECK(cfg.style.wing.angle_deg == 15.0);
  CHECK(cfg.style.wing.length_ratio == 0.12);
  CHECK(cfg.style.k_normal == 0.35);
  CHECK(cfg.style.k_reduced == 0.25);
}

TEST_CASE("shipped config directory equals the embedded defaults") {
  CHECK(lg::load_config_dir(LINERGUIDE_CONFIG_DIR) == lg::default_engine_config());
}

TEST_CASE("apply_overrides") {
  const lg::EngineConfig& base = lg::default_engine_config();
  CHECK(lg::apply_overrides(base, nullptr) == base);
  CHECK(lg::apply_overrides(base, json::object()) == base);

  const lg::EngineConfig a = lg::apply_overrides(base, {{"a_high", 3.1}});
  CHECK(a.classifier.a_high == 3.1);
  CHECK(a.classifier.a_low == 2.75);

  const lg::EngineConfig r =
      lg::apply_overrides(base, {{"rules", {{"turn", {{"Downturned", "Drop"}}}}}});
  CHECK(r.rules.for_turn(lg::TurnLabel::kDownturned) == lg::StyleId::kDrop);
  CHECK(r.rules.for_turn(lg::TurnLabel::kUpturned) == lg::StyleId::kExtend);

  const lg::EngineConfig s = lg::apply_overrides(base, {{"style", {{"k_normal", 0.4}}}});
  CHECK(s.style.k_normal == 0.4);
  CHECK(s.style.k_reduced == 0.25);

  CHECK(code_of([&] { lg::apply_overrides(base, {{"a_high", "tall"}}); }) ==
        lg::ErrorCode::kBadConfig);
  CHECK(code_of([&] { lg::apply_overrides(base, {{"bogus", 1}}); }) == lg::ErrorCode::kBadConfig);
  CHECK(code_of([&] { lg::apply_overrides(base, {{"a_high", 2.0}}); }) ==
        lg::ErrorCode::kBadConfig);
  CHECK(code_of([&] { lg::apply_overrides(base, json::array()); }) == lg::ErrorCode::kBadConfig);
}

TEST_CASE("config round trip through JSON") {
  const lg::EngineConfig& base = lg::default_engine_config();
  const json doc = lg::engine_config_to_json(base);
  CHECK(lg::apply_overrides(base, doc) == base);
  CHECK(lg::index_map_from_json(lg::index_map_to_json(base.index_map)).left_eye ==
        base.index_map.left_eye);
}

TEST_CASE("load_config_dir and read_json_file") {
  const fs::path dir = temp_dir("dir");
  std::ofstream(dir / "classifier.json") << R"({"a_low": 2.6, "a_high": 3.2})";
  const lg::EngineConfig cfg = lg::load_config_dir(dir);
  CHECK(cfg.classifier.a_low == 2.6);
  CHECK(cfg.rules == lg::default_engine_config().rules);

  std::ofstream(dir / "style.json") << R"({"k_normal": )";
  CHECK(code_of([&] { lg::load_config_dir(dir); }) == lg::ErrorCode::kBadConfig);
  CHECK(code_of([&] { lg::read_json_file(dir / "missing.json"); }) == lg::ErrorCode::kBadConfig);
  fs::remove_all(dir);
}

TEST_CASE("index map config errors") {
  json m = lg::index_map_to_json(lg::default_engine_config().index_map);
  m["left_eye"].erase(0);
  CHECK(code_of([&] { lg::index_map_from_json(m); }) == lg::ErrorCode::kBadConfig);
  m = lg::index_map_to_json(lg::default_engine_config().index_map);
  m["left_eye"][0] = m["right_eye"][0];
  CHECK(code_of([&] { lg::index_map_from_json(m); }) == lg::ErrorCode::kBadConfig);
}

TEST_CASE("schema describes every override key") {
  const json schema = lg::config_schema();
  REQUIRE(schema.contains("properties"));
  for (const char* key : {"a_low", "a_high", "spacing_lo", "spacing_hi", "turn_tiebreak", "style",
                          "rules", "index_map", "image"}) {
    CHECK_MESSAGE(schema["properties"].contains(key), key);
  }
}
