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

#ifndef LINERGUIDE_STYLES_HPP_
#define LINERGUIDE_STYLES_HPP_

#include <array>

#include "linerguide/landmarks.hpp"
#include "linerguide/polygon.hpp"

namespace linerguide {

// Eyeliner thickness in pixels. h_lower_outer is where the lower-outer taper
// starts; h_lower_inner is always h / 3.
struct ThicknessProfile {
  double h = 0.0;
  double h_lower_outer = 0.0;
  double h_lower_inner = 0.0;

  static ThicknessProfile from_upper(double h) { return {h, h, h / 3.0}; }
  friend bool operator==(const ThicknessProfile&, const ThicknessProfile&) = default;
};

struct WingSpec {
  double angle_deg = 15.0;     // Winged only, measured from the p0-p8 axis
  double length_ratio = 0.12;  // |E - p8| as a fraction of eye width

  friend bool operator==(const WingSpec&, const WingSpec&) = default;
};

enum class ThicknessClass { kNormal, kReduced };

struct StyleConfig {
  double k_normal = 0.35;   // h = k * eye_height for Small / Average eyes
  double k_reduced = 0.25;  // Big eyes
  WingSpec wing{};

  // Throws Error(kBadConfig) on non-positive k, or wing values outside
  // 0 < angle < 90 and 0 < ratio < 1.
  void validate() const;

  friend bool operator==(const StyleConfig&, const StyleConfig&) = default;
};

ThicknessProfile thickness_for(ThicknessClass cls, double eye_height, const StyleConfig& cfg);

// Midpoint of each upper-lid segment p_i p_{i+1} pushed h px along the
// segment normal that points away from the eye. Index i is p_i'.
// Throws kZeroLengthSegment.
std::array<Vec2, 8> offset_points(const EyeContour& c, double h);

// [p0 .. p8, p7' .. p0']. Throws kZeroLengthSegment or kSelfIntersection.
GuidancePolygon style_basic(const EyeContour& c, double h);

// Wing tip E for a wing variant. Throws kDegenerateAngle (Drop with p4 == p8)
// and std::invalid_argument for a non-wing style.
Vec2 wing_point(const EyeContour& c, StyleId variant, const WingSpec& wing = {});

// Basic ring with E inserted between p8 and p7'.
GuidancePolygon style_with_wing(const EyeContour& c, double h, StyleId variant,
                                const WingSpec& wing = {});

// [p8, p9, p10, p11, q11, q10, q9]: segments p8p9, p9p10, p10p11 offset below
// the lower lid by h, 2h/3 and h/3.
GuidancePolygon style_lower_outer(const EyeContour& c, double h);

// [p13, p14, p15, p0, r15, r14, r13]: segments p13p14, p14p15, p15p0 (r_i is
// the offset of segment p_i p_{i+1}) pushed below the lower lid by h/3.
GuidancePolygon style_lower_inner(const EyeContour& c, double h);

// Joins a winged upper ring and a LowerOuter ring at their shared p8 so the
// wing tip E connects to the thickest lower offset. An empty lower polygon
// returns `upper` unchanged. Throws kInvalidMergeInput when the rings do not
// fit together and kMergeSelfIntersection naming the crossing edge pair.
GuidancePolygon merge_outer_wing(const GuidancePolygon& upper, const GuidancePolygon& lower,
                                 Vec2 wing_tip);

struct InnerMerge {
  GuidancePolygon polygon;
  Vec2 cross_point;           // the inner tip E on the p0-p8 axis
  double cross_t = 0.0;       // axis coordinate of E, negative beyond p0
  bool fallback_used = false; // true when the fitted curve never met the axis
};

// Fits s(t) = c0 + c1 t + c2 t^2 by least squares to p0'..p7' in axis
// coordinates (t along p0->p8 from p0, s perpendicular) and takes the root
// with -width <= t < 0 closest to p0 as the inner tip. Without such a root the tip
// falls back to p0 - (h/3) * unit(p8 - p0). `upper` must start at p0 and end
// at p0' (Basic or a wing variant of it).
InnerMerge merge_inner_basic(const GuidancePolygon& upper, const GuidancePolygon& lower,
                             const EyeContour& c, double h);

}  // namespace linerguide

#endif  // LINERGUIDE_STYLES_HPP_
