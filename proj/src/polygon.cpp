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

#include "linerguide/polygon.hpp"

#include <algorithm>
#include <cctype>

namespace linerguide {

std::string_view eye_side_name(EyeSide side) { return side == EyeSide::kLeft ? "left" : "right"; }

std::string_view style_name(StyleId style) {
  switch (style) {
    case StyleId::kBasic: return "Basic";
    case StyleId::kWinged: return "Winged";
    case StyleId::kDrop: return "Drop";
    case StyleId::kExtend: return "Extend";
    case StyleId::kLowerInner: return "LowerInner";
    case StyleId::kLowerOuter: return "LowerOuter";
  }
  return "?";
}

std::optional<StyleId> parse_style(std::string_view text) {
  std::string folded;
  for (char ch : text) {
    if (ch == '_' || ch == '-') continue;
    folded.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  for (StyleId s : kAllStyles) {
    std::string name(style_name(s));
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (name == folded) return s;
  }
  return std::nullopt;
}

std::string GuidancePolygon::style_label() const {
  std::string out;
  for (StyleId s : styles) {
    if (!out.empty()) out += '+';
    out += style_name(s);
  }
  return out;
}

}  // namespace linerguide
