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

#ifndef LINERGUIDE_POLYGON_HPP_
#define LINERGUIDE_POLYGON_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linerguide/geometry.hpp"

namespace linerguide {

enum class EyeSide { kLeft, kRight };

std::string_view eye_side_name(EyeSide side);  // "left" / "right"

enum class StyleId { kBasic, kWinged, kDrop, kExtend, kLowerInner, kLowerOuter };

inline constexpr StyleId kAllStyles[] = {StyleId::kBasic,      StyleId::kWinged,
                                         StyleId::kDrop,       StyleId::kExtend,
                                         StyleId::kLowerInner, StyleId::kLowerOuter};

// Canonical names: "Basic", "Winged", "Drop", "Extend", "LowerInner", "LowerOuter".
std::string_view style_name(StyleId style);

// Accepts the canonical names case-insensitively, plus snake_case
// ("lower_inner"). Returns nullopt for anything else.
std::optional<StyleId> parse_style(std::string_view text);

constexpr bool is_wing_variant(StyleId s) {
  return s == StyleId::kWinged || s == StyleId::kDrop || s == StyleId::kExtend;
}

// Closed guidance mask for one eye. `styles` holds one entry for a plain style
// and every contributing style, in merge order, for a merged polygon.
struct GuidancePolygon {
  std::vector<Vec2> vertices;
  std::vector<StyleId> styles;
  EyeSide side = EyeSide::kRight;

  bool merged() const { return styles.size() > 1; }
  // "Basic" or "Basic+Winged+LowerOuter".
  std::string style_label() const;

  friend bool operator==(const GuidancePolygon&, const GuidancePolygon&) = default;
};

}  // namespace linerguide

#endif  // LINERGUIDE_POLYGON_HPP_
