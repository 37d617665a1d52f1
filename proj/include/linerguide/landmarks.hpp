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

#ifndef LINERGUIDE_LANDMARKS_HPP_
#define LINERGUIDE_LANDMARKS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "linerguide/geometry.hpp"
#include "linerguide/polygon.hpp"

namespace linerguide {

inline constexpr std::size_t kMinLandmarkCount = 468;
inline constexpr std::size_t kContourSize = 16;

// Roles of contour slots. Upper lid runs p1..p7 inner to outer, lower lid runs
// p9..p15 outer to inner, so the 16 points trace a closed loop.
inline constexpr std::size_t kInnerCorner = 0;
inline constexpr std::size_t kUpperApex = 4;
inline constexpr std::size_t kOuterCorner = 8;
inline constexpr std::size_t kLowerApex = 12;

// Eye widths below this are treated as a failed detection (blink, occlusion).
inline constexpr double kMinEyeWidthPx = 1.0;

// One detector output. Landmarks are normalized to [0, 1] image coordinates
// with y down; the engine converts to pixels at ingest.
struct FaceMeshFrame {
  std::vector<Vec2> landmarks;
  int width = 0;
  int height = 0;
  std::int64_t timestamp_ms = 0;

  // Throws Error(kInvalidFrame) on too few landmarks, non-finite coordinates
  // or a non-positive image size.
  void validate() const;
};

using ContourIndices = std::array<int, kContourSize>;

struct EyeIndexMap {
  ContourIndices right_eye{};
  ContourIndices left_eye{};

  // Throws Error(kBadConfig) unless all 32 indices are distinct and
  // non-negative.
  void validate() const;

  friend bool operator==(const EyeIndexMap&, const EyeIndexMap&) = default;
};

// Reflection about the vertical line x = axis_x. The identity when
// `reflected` is false. Self-inverse.
struct CanonicalTransform {
  bool reflected = false;
  double axis_x = 0.0;

  Vec2 apply(Vec2 p) const { return reflected ? Vec2{2.0 * axis_x - p.x, p.y} : p; }

  friend bool operator==(const CanonicalTransform&, const CanonicalTransform&) = default;
};

struct EyeContour {
  std::array<Vec2, kContourSize> points{};
  EyeSide side = EyeSide::kRight;
  bool canonical = false;
  // Maps original image coordinates to the current `points` frame.
  CanonicalTransform transform{};

  Vec2 inner_corner() const { return points[kInnerCorner]; }
  Vec2 outer_corner() const { return points[kOuterCorner]; }
  Vec2 upper_apex() const { return points[kUpperApex]; }
  Vec2 lower_apex() const { return points[kLowerApex]; }
  // Contour point i in original image coordinates.
  Vec2 original(std::size_t i) const { return transform.apply(points[i]); }

  friend bool operator==(const EyeContour&, const EyeContour&) = default;
};

struct EyePair {
  EyeContour left;
  EyeContour right;
};

// Selects both eyes' contours from a validated frame and converts them to
// pixels. Throws kInvalidFrame, kIndexOutOfRange or kDegenerateContour.
EyePair extract_eye_contours(const FaceMeshFrame& frame, const EyeIndexMap& map);

// Reflects contours whose outer corner lies left of the inner corner about the
// vertical line through their centroid, so one geometry path serves both eyes.
// Already-canonical contours are returned unchanged.
EyeContour canonicalize(const EyeContour& contour);

// Maps a polygon built on canonicalize(c) back into image coordinates. When
// the transform reflects, the vertex order is reversed (keeping vertex 0) so
// the winding stays counter-clockwise.
GuidancePolygon uncanonicalize(const GuidancePolygon& polygon, const EyeContour& contour);

}  // namespace linerguide

#endif  // LINERGUIDE_LANDMARKS_HPP_
