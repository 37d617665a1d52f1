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

#ifndef LINERGUIDE_CONFIG_HPP_
#define LINERGUIDE_CONFIG_HPP_

#include <filesystem>

#include "json.hpp"

#include "linerguide/features.hpp"
#include "linerguide/landmarks.hpp"
#include "linerguide/recommender.hpp"
#include "linerguide/styles.hpp"

namespace linerguide {

namespace defaults {
// Contents of config/*.json, embedded at build time.
extern const char* const kEyeIndexMapJson;
extern const char* const kClassifierJson;
extern const char* const kStyleJson;
extern const char* const kRulesJson;
}  // namespace defaults

struct EngineConfig {
  ClassifierConfig classifier;
  StyleConfig style;
  RecommendationRules rules;
  EyeIndexMap index_map;

  void validate() const;
  friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

// The shipped defaults. Parsed once; the returned reference is immutable.
const EngineConfig& default_engine_config();

// Each *_from_json overlays the keys present in `doc` on `base`; unknown keys
// and wrongly typed values throw Error(kBadConfig).
ClassifierConfig classifier_from_json(const nlohmann::json& doc, ClassifierConfig base = {});
StyleConfig style_from_json(const nlohmann::json& doc, StyleConfig base = {});
EyeIndexMap index_map_from_json(const nlohmann::json& doc);

nlohmann::json classifier_to_json(const ClassifierConfig& cfg);
nlohmann::json style_to_json(const StyleConfig& cfg);
nlohmann::json index_map_to_json(const EyeIndexMap& map);
nlohmann::json engine_config_to_json(const EngineConfig& cfg);

// Override document: classifier fields at the top level plus optional
// "style", "rules" (merged key-wise into the current table) and "index_map"
// objects. The result is validated.
EngineConfig apply_overrides(const EngineConfig& base, const nlohmann::json& overrides);

// Reads classifier.json, style.json, rules.json and eye_index_map.json from
// `dir`; missing files keep the built-in defaults.
EngineConfig load_config_dir(const std::filesystem::path& dir);

// Parses a JSON file, mapping I/O and syntax problems to Error(kBadConfig).
nlohmann::json read_json_file(const std::filesystem::path& path);

// JSON Schema for the override document, served by the config-schema endpoint.
nlohmann::json config_schema();

}  // namespace linerguide

#endif  // LINERGUIDE_CONFIG_HPP_
