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

#ifndef LINERGUIDE_RECOMMENDER_HPP_
#define LINERGUIDE_RECOMMENDER_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "linerguide/features.hpp"
#include "linerguide/polygon.hpp"
#include "linerguide/styles.hpp"

namespace linerguide {

std::string_view thickness_class_name(ThicknessClass cls);  // "normal" / "reduced"

struct SizeRule {
  StyleId upper = StyleId::kBasic;
  ThicknessClass thickness = ThicknessClass::kNormal;

  friend bool operator==(const SizeRule&, const SizeRule&) = default;
};

// Lookup table indexed by label enum value, so every table is total by
// construction once loaded.
struct RecommendationRules {
  std::array<SizeRule, 3> size{};                     // by SizeLabel
  std::array<StyleId, 2> turn{};                      // by TurnLabel, wing variants only
  std::array<std::optional<StyleId>, 3> spacing{};    // by SpacingLabel, lower styles or none

  const SizeRule& for_size(SizeLabel l) const { return size[static_cast<std::size_t>(l)]; }
  StyleId for_turn(TurnLabel l) const { return turn[static_cast<std::size_t>(l)]; }
  std::optional<StyleId> for_spacing(SpacingLabel l) const {
    return spacing[static_cast<std::size_t>(l)];
  }

  friend bool operator==(const RecommendationRules&, const RecommendationRules&) = default;
};

struct RationaleEntry {
  std::string label;  // e.g. "size=Big"
  std::string rule;   // e.g. "size.Big -> Basic, reduced thickness"

  friend bool operator==(const RationaleEntry&, const RationaleEntry&) = default;
};

struct Recommendation {
  StyleId upper = StyleId::kBasic;
  std::optional<StyleId> wing;
  std::optional<StyleId> lower;
  ThicknessClass thickness = ThicknessClass::kNormal;
  std::vector<RationaleEntry> rationale;

  // upper, then wing and lower when present.
  std::vector<StyleId> styles() const;

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

Recommendation recommend(const EyeShapeLabels& labels, const RecommendationRules& rules);

// Parses and validates a rules document:
//   {"size": {"Small": {"upper": "Basic", "thickness": "normal"}, ...},
//    "turn": {"Downturned": "Winged", ...},
//    "spacing": {"Close": "LowerOuter", "Average": "none", ...}}
// Throws kIncompleteRules listing every missing label, kUnknownStyle for a
// style that is unknown or not allowed in its table, kBadConfig otherwise.
RecommendationRules load_rules(const nlohmann::json& doc);

nlohmann::json rules_to_json(const RecommendationRules& rules);

}  // namespace linerguide

#endif  // LINERGUIDE_RECOMMENDER_HPP_
