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

#include "linerguide/recommender.hpp"

#include <string>

#include "linerguide/error.hpp"

namespace linerguide {
namespace {

using nlohmann::json;

template <typename Label>
const json* find_entry(const json& table, Label label, std::vector<std::string>& missing,
                       std::string_view table_name) {
  const std::string key(label_name(label));
  if (!table.is_object() || !table.contains(key)) {
    missing.push_back(std::string(table_name) + "." + key);
    return nullptr;
  }
  return &table.at(key);
}

StyleId parse_style_or_throw(const json& v, std::string_view where) {
  if (!v.is_string()) {
    throw Error(ErrorCode::kBadConfig, std::string(where) + " must be a style name string");
  }
  const auto s = parse_style(v.get<std::string>());
  if (!s) {
    throw Error(ErrorCode::kUnknownStyle,
                "unknown style '" + v.get<std::string>() + "' at " + std::string(where));
  }
  return *s;
}

const json& section(const json& doc, const char* name) {
  static const json kEmpty = json::object();
  if (!doc.contains(name)) return kEmpty;
  const json& s = doc.at(name);
  if (!s.is_object()) {
    throw Error(ErrorCode::kBadConfig, std::string("rules.") + name + " must be an object");
  }
  return s;
}

}  // namespace

std::string_view thickness_class_name(ThicknessClass cls) {
  return cls == ThicknessClass::kReduced ? "reduced" : "normal";
}

std::vector<StyleId> Recommendation::styles() const {
  std::vector<StyleId> out{upper};
  if (wing) out.push_back(*wing);
  if (lower) out.push_back(*lower);
  return out;
}

Recommendation recommend(const EyeShapeLabels& labels, const RecommendationRules& rules) {
  Recommendation rec;
  const SizeRule& size = rules.for_size(labels.size);
  rec.upper = size.upper;
  rec.thickness = size.thickness;
  rec.rationale.push_back(
      {"size=" + std::string(label_name(labels.size)),
       "size." + std::string(label_name(labels.size)) + " -> " +
           std::string(style_name(size.upper)) + ", " +
           std::string(thickness_class_name(size.thickness)) + " thickness"});

  rec.wing = rules.for_turn(labels.turn);
  rec.rationale.push_back({"turn=" + std::string(label_name(labels.turn)),
                           "turn." + std::string(label_name(labels.turn)) + " -> " +
                               std::string(style_name(*rec.wing)) + " wing"});

  rec.lower = rules.for_spacing(labels.spacing);
  rec.rationale.push_back(
      {"spacing=" + std::string(label_name(labels.spacing)),
       "spacing." + std::string(label_name(labels.spacing)) + " -> " +
           (rec.lower ? std::string(style_name(*rec.lower)) : std::string("no lower style"))});
  return rec;
}

RecommendationRules load_rules(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kBadConfig, "rules document must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "size" && key != "turn" && key != "spacing") {
      throw Error(ErrorCode::kBadConfig, "unknown rules section '" + key + "'");
    }
  }
  const json& size = section(doc, "size");
  const json& turn = section(doc, "turn");
  const json& spacing = section(doc, "spacing");

  std::vector<std::string> missing;
  RecommendationRules rules;

  for (SizeLabel l : kAllSizeLabels) {
    const json* e = find_entry(size, l, missing, "size");
    if (!e) continue;
    const std::string where = "size." + std::string(label_name(l));
    if (!e->is_object() || !e->contains("upper")) {
      throw Error(ErrorCode::kBadConfig, where + " needs an \"upper\" style");
    }
    SizeRule r;
    r.upper = parse_style_or_throw(e->at("upper"), where + ".upper");
    if (r.upper != StyleId::kBasic) {
      throw Error(ErrorCode::kUnknownStyle, where + ".upper must be Basic");
    }
    const std::string thick = e->value("thickness", std::string("normal"));
    if (thick == "normal") {
      r.thickness = ThicknessClass::kNormal;
    } else if (thick == "reduced") {
      r.thickness = ThicknessClass::kReduced;
    } else {
      throw Error(ErrorCode::kBadConfig, where + ".thickness must be \"normal\" or \"reduced\"");
    }
    rules.size[static_cast<std::size_t>(l)] = r;
  }

  for (TurnLabel l : kAllTurnLabels) {
    const json* e = find_entry(turn, l, missing, "turn");
    if (!e) continue;
    const std::string where = "turn." + std::string(label_name(l));
    const StyleId s = parse_style_or_throw(*e, where);
    if (!is_wing_variant(s)) {
      throw Error(ErrorCode::kUnknownStyle, where + " must be Winged, Drop or Extend");
    }
    rules.turn[static_cast<std::size_t>(l)] = s;
  }

  for (SpacingLabel l : kAllSpacingLabels) {
    const json* e = find_entry(spacing, l, missing, "spacing");
    if (!e) continue;
    const std::string where = "spacing." + std::string(label_name(l));
    if (e->is_null() || (e->is_string() && e->get<std::string>() == "none")) {
      rules.spacing[static_cast<std::size_t>(l)] = std::nullopt;
      continue;
    }
    const StyleId s = parse_style_or_throw(*e, where);
    if (s != StyleId::kLowerInner && s != StyleId::kLowerOuter) {
      throw Error(ErrorCode::kUnknownStyle, where + " must be LowerInner, LowerOuter or none");
    }
    rules.spacing[static_cast<std::size_t>(l)] = s;
  }

  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorCode::kIncompleteRules, "rules table is missing: " + list);
  }
  return rules;
}

json rules_to_json(const RecommendationRules& rules) {
  json doc = {{"size", json::object()}, {"turn", json::object()}, {"spacing", json::object()}};
  for (SizeLabel l : kAllSizeLabels) {
    const SizeRule& r = rules.for_size(l);
    doc["size"][std::string(label_name(l))] = {
        {"upper", style_name(r.upper)}, {"thickness", thickness_class_name(r.thickness)}};
  }
  for (TurnLabel l : kAllTurnLabels) {
    doc["turn"][std::string(label_name(l))] = style_name(rules.for_turn(l));
  }
  for (SpacingLabel l : kAllSpacingLabels) {
    const auto s = rules.for_spacing(l);
    doc["spacing"][std::string(label_name(l))] = s ? std::string(style_name(*s)) : "none";
  }
  return doc;
}

}  // namespace linerguide
