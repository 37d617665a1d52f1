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

#include "linerguide/config.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "linerguide/error.hpp"

namespace linerguide {
namespace {

using nlohmann::json;

void require_object(const json& doc, const std::string& what) {
  if (!doc.is_object()) throw Error(ErrorCode::kBadConfig, what + " must be a JSON object");
}

double number_field(const json& v, const std::string& key) {
  if (!v.is_number()) throw Error(ErrorCode::kBadConfig, "'" + key + "' must be a number");
  return v.get<double>();
}

TurnLabel parse_turn(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == label_name(TurnLabel::kUpturned)) return TurnLabel::kUpturned;
    if (s == label_name(TurnLabel::kDownturned)) return TurnLabel::kDownturned;
  }
  throw Error(ErrorCode::kBadConfig, "'turn_tiebreak' must be \"Upturned\" or \"Downturned\"");
}

ContourIndices parse_indices(const json& v, const char* key) {
  if (!v.is_array() || v.size() != kContourSize) {
    throw Error(ErrorCode::kBadConfig, std::string("'") + key + "' must list 16 landmark indices");
  }
  ContourIndices out{};
  for (std::size_t i = 0; i < kContourSize; ++i) {
    if (!v[i].is_number_integer()) {
      throw Error(ErrorCode::kBadConfig, std::string("'") + key + "' entries must be integers");
    }
    out[i] = v[i].get<int>();
  }
  return out;
}

json parse_embedded(const char* text) { return json::parse(text); }

}  // namespace

void EngineConfig::validate() const {
  classifier.validate();
  style.validate();
  index_map.validate();
}

const EngineConfig& default_engine_config() {
  static const EngineConfig cfg = [] {
    EngineConfig c;
    c.classifier = classifier_from_json(parse_embedded(defaults::kClassifierJson));
    c.style = style_from_json(parse_embedded(defaults::kStyleJson));
    c.rules = load_rules(parse_embedded(defaults::kRulesJson));
    c.index_map = index_map_from_json(parse_embedded(defaults::kEyeIndexMapJson));
    c.validate();
    return c;
  }();
  return cfg;
}

ClassifierConfig classifier_from_json(const json& doc, ClassifierConfig base) {
  require_object(doc, "classifier config");
  for (const auto& [key, v] : doc.items()) {
    if (key == "a_low") {
      base.a_low = number_field(v, key);
    } else if (key == "a_high") {
      base.a_high = number_field(v, key);
    } else if (key == "spacing_lo") {
      base.spacing_lo = number_field(v, key);
    } else if (key == "spacing_hi") {
      base.spacing_hi = number_field(v, key);
    } else if (key == "turn_tiebreak") {
      base.turn_tiebreak = parse_turn(v);
    } else {
      throw Error(ErrorCode::kBadConfig, "unknown classifier key '" + key + "'");
    }
  }
  base.validate();
  return base;
}

StyleConfig style_from_json(const json& doc, StyleConfig base) {
  require_object(doc, "style config");
  for (const auto& [key, v] : doc.items()) {
    if (key == "k_normal") {
      base.k_normal = number_field(v, key);
    } else if (key == "k_reduced") {
      base.k_reduced = number_field(v, key);
    } else if (key == "wing_angle_deg") {
      base.wing.angle_deg = number_field(v, key);
    } else if (key == "wing_length_ratio") {
      base.wing.length_ratio = number_field(v, key);
    } else {
      throw Error(ErrorCode::kBadConfig, "unknown style key '" + key + "'");
    }
  }
  base.validate();
  return base;
}

EyeIndexMap index_map_from_json(const json& doc) {
  require_object(doc, "eye index map");
  if (!doc.contains("right_eye") || !doc.contains("left_eye") || doc.size() != 2) {
    throw Error(ErrorCode::kBadConfig,
                "eye index map needs exactly 'right_eye' and 'left_eye' arrays");
  }
  EyeIndexMap map;
  map.right_eye = parse_indices(doc.at("right_eye"), "right_eye");
  map.left_eye = parse_indices(doc.at("left_eye"), "left_eye");
  map.validate();
  return map;
}

json classifier_to_json(const ClassifierConfig& cfg) {
  return {{"a_low", cfg.a_low},
          {"a_high", cfg.a_high},
          {"spacing_lo", cfg.spacing_lo},
          {"spacing_hi", cfg.spacing_hi},
          {"turn_tiebreak", label_name(cfg.turn_tiebreak)}};
}

json style_to_json(const StyleConfig& cfg) {
  return {{"k_normal", cfg.k_normal},
          {"k_reduced", cfg.k_reduced},
          {"wing_angle_deg", cfg.wing.angle_deg},
          {"wing_length_ratio", cfg.wing.length_ratio}};
}

json index_map_to_json(const EyeIndexMap& map) {
  return {{"right_eye", map.right_eye}, {"left_eye", map.left_eye}};
}

json engine_config_to_json(const EngineConfig& cfg) {
  json doc = classifier_to_json(cfg.classifier);
  doc["style"] = style_to_json(cfg.style);
  doc["rules"] = rules_to_json(cfg.rules);
  doc["index_map"] = index_map_to_json(cfg.index_map);
  return doc;
}

EngineConfig apply_overrides(const EngineConfig& base, const json& overrides) {
  if (overrides.is_null()) return base;
  require_object(overrides, "config overrides");
  EngineConfig cfg = base;
  json classifier_keys = json::object();
  for (const auto& [key, v] : overrides.items()) {
    if (key == "style") {
      cfg.style = style_from_json(v, cfg.style);
    } else if (key == "rules") {
      require_object(v, "rules");
      json merged = rules_to_json(cfg.rules);
      for (const auto& [section, entries] : v.items()) {
        if (!entries.is_object() || !merged.contains(section)) {
          merged[section] = entries;  // let load_rules report the problem
          continue;
        }
        for (const auto& [label, value] : entries.items()) merged[section][label] = value;
      }
      cfg.rules = load_rules(merged);
    } else if (key == "index_map") {
      cfg.index_map = index_map_from_json(v);
    } else {
      classifier_keys[key] = v;
    }
  }
  cfg.classifier = classifier_from_json(classifier_keys, cfg.classifier);
  cfg.validate();
  return cfg;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kBadConfig, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kBadConfig,
                path.string() + ": JSON parse error at byte " + std::to_string(e.byte));
  }
}

EngineConfig load_config_dir(const std::filesystem::path& dir) {
  EngineConfig cfg = default_engine_config();
  auto file = [&](const char* name) { return dir / name; };
  if (std::filesystem::exists(file("classifier.json"))) {
    cfg.classifier = classifier_from_json(read_json_file(file("classifier.json")));
  }
  if (std::filesystem::exists(file("style.json"))) {
    cfg.style = style_from_json(read_json_file(file("style.json")));
  }
  if (std::filesystem::exists(file("rules.json"))) {
    cfg.rules = load_rules(read_json_file(file("rules.json")));
  }
  if (std::filesystem::exists(file("eye_index_map.json"))) {
    cfg.index_map = index_map_from_json(read_json_file(file("eye_index_map.json")));
  }
  cfg.validate();
  return cfg;
}

json config_schema() {
  const json number = {{"type", "number"}};
  const json labels_turn = {{"enum", {"Upturned", "Downturned"}}};
  const json wing = {{"enum", {"Winged", "Drop", "Extend"}}};
  const json lower = {{"enum", {"LowerInner", "LowerOuter", "none"}}};
  const json size_rule = {
      {"type", "object"},
      {"properties",
       {{"upper", {{"enum", {"Basic"}}}}, {"thickness", {{"enum", {"normal", "reduced"}}}}}},
      {"required", {"upper"}}};
  const json indices = {
      {"type", "array"}, {"items", {{"type", "integer"}, {"minimum", 0}}},
      {"minItems", 16},  {"maxItems", 16}};
  return {
      {"$schema", "https://json-schema.org/draft/2020-12/schema"},
      {"title", "linerguide engine config overrides"},
      {"type", "object"},
      {"additionalProperties", false},
      {"properties",
       {{"a_low", number},
        {"a_high", number},
        {"spacing_lo", number},
        {"spacing_hi", number},
        {"turn_tiebreak", labels_turn},
        {"image",
         {{"type", "object"},
          {"properties", {{"w", {{"type", "integer"}}}, {"h", {{"type", "integer"}}}}}}},
        {"style",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties",
           {{"k_normal", number},
            {"k_reduced", number},
            {"wing_angle_deg", number},
            {"wing_length_ratio", number}}}}},
        {"rules",
         {{"type", "object"},
          {"properties",
           {{"size",
             {{"type", "object"},
              {"properties",
               {{"Small", size_rule}, {"Average", size_rule}, {"Big", size_rule}}}}},
            {"turn",
             {{"type", "object"},
              {"properties", {{"Upturned", wing}, {"Downturned", wing}}}}},
            {"spacing",
             {{"type", "object"},
              {"properties", {{"Close", lower}, {"Average", lower}, {"Open", lower}}}}}}}}},
        {"index_map",
         {{"type", "object"},
          {"properties", {{"right_eye", indices}, {"left_eye", indices}}},
          {"required", {"right_eye", "left_eye"}}}}}}};
}

}  // namespace linerguide
