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

#ifndef LINERGUIDE_ENGINE_HPP_
#define LINERGUIDE_ENGINE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linerguide/config.hpp"
#include "linerguide/features.hpp"
#include "linerguide/landmarks.hpp"
#include "linerguide/recommender.hpp"
#include "linerguide/styles.hpp"

namespace linerguide {

// Labels plus the style selection derived from them; what a freeze captures.
struct ShapeAnalysis {
  FaceAnalysis features;
  Recommendation left;
  Recommendation right;

  friend bool operator==(const ShapeAnalysis&, const ShapeAnalysis&) = default;
};

struct EyeGuidance {
  EyeSide side = EyeSide::kRight;
  std::vector<StyleId> styles;
  ThicknessProfile thickness;
  // Image coordinates, counter-clockwise.
  std::vector<GuidancePolygon> polygons;
  // The detected contour in image coordinates.
  std::array<Vec2, kContourSize> contour{};
  bool fallback_used = false;

  friend bool operator==(const EyeGuidance&, const EyeGuidance&) = default;
};

struct FrameStatus {
  bool detection_ok = false;
  bool geometry_ok = false;
  bool fallback_used = false;
  std::string error_code;  // empty when both flags are ok
  std::string message;

  friend bool operator==(const FrameStatus&, const FrameStatus&) = default;
};

struct GuidanceFrame {
  std::int64_t t = 0;
  FrameStatus status;
  bool frozen = false;
  // Absent when detection failed on a live frame.
  std::optional<ShapeAnalysis> analysis;
  // Polygons are present only when status.detection_ok && status.geometry_ok.
  EyeGuidance left;
  EyeGuidance right;

  friend bool operator==(const GuidanceFrame&, const GuidanceFrame&) = default;
};

// Features, labels and recommendations for an extracted eye pair.
ShapeAnalysis analyze_shape(const EyePair& eyes, const EngineConfig& cfg);

// Builds the merged guidance polygons for one eye. `contour` may be raw or
// canonical; the result is in image coordinates either way.
EyeGuidance build_eye_guidance(const EyeContour& contour, const Recommendation& rec,
                               double eye_height, const StyleConfig& style);

// Full per-frame pipeline. With `frozen` set, labels and recommendations are
// taken from it and only geometry follows the frame. Detection failures are
// reported in the status; malformed frames and bad index maps throw.
GuidanceFrame process_frame(const FaceMeshFrame& frame, const EngineConfig& cfg,
                            const ShapeAnalysis* frozen = nullptr);

// Replaces parts of a recommendation: a wing variant replaces the wing, a
// lower style replaces the lower style, Basic drops both.
Recommendation override_styles(Recommendation rec, std::span<const StyleId> styles);

}  // namespace linerguide

#endif  // LINERGUIDE_ENGINE_HPP_
