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

#include "linerguide/landmarks.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "linerguide/error.hpp"

namespace linerguide {
namespace {

// Side (+1/-1/0) of line p0-p8 holding the lid point farthest from it.
int lid_side(const EyeContour& c, std::size_t first, std::size_t last) {
  const Vec2 a = c.inner_corner();
  const Vec2 b = c.outer_corner();
  double best = 0.0;
  int side = 0;
  for (std::size_t i = first; i <= last; ++i) {
    const double d = distance_to_line(c.points[i], a, b);
    if (d > best) {
      best = d;
      side = side_of_line(c.points[i], a, b);
    }
  }
  return side;
}

void check_width(const EyeContour& c) {
  const double width = distance(c.inner_corner(), c.outer_corner());
  if (!(width >= kMinEyeWidthPx)) {
    throw Error(ErrorCode::kDegenerateContour,
                std::string(eye_side_name(c.side)) + " eye width " + std::to_string(width) +
                    " px is below the 1 px detection floor");
  }
}

EyeContour select(const FaceMeshFrame& frame, const ContourIndices& indices, EyeSide side) {
  EyeContour c;
  c.side = side;
  for (std::size_t i = 0; i < kContourSize; ++i) {
    const int idx = indices[i];
    if (idx < 0 || static_cast<std::size_t>(idx) >= frame.landmarks.size()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "landmark index " + std::to_string(idx) + " out of range for a frame with " +
                      std::to_string(frame.landmarks.size()) + " landmarks");
    }
    const Vec2 n = frame.landmarks[static_cast<std::size_t>(idx)];
    c.points[i] = {n.x * frame.width, n.y * frame.height};
  }
  return c;
}

}  // namespace

void FaceMeshFrame::validate() const {
  if (landmarks.size() < kMinLandmarkCount) {
    throw Error(ErrorCode::kInvalidFrame, "frame has " + std::to_string(landmarks.size()) +
                                              " landmarks, at least 468 required");
  }
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidFrame, "image size must be positive");
  }
  for (const Vec2& p : landmarks) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::kInvalidFrame, "landmark coordinates must be finite");
    }
  }
}

void EyeIndexMap::validate() const {
  std::set<int> seen;
  for (const ContourIndices* eye : {&right_eye, &left_eye}) {
    for (int idx : *eye) {
      if (idx < 0) throw Error(ErrorCode::kBadConfig, "negative landmark index in eye index map");
      if (!seen.insert(idx).second) {
        throw Error(ErrorCode::kBadConfig,
                    "landmark index " + std::to_string(idx) + " appears twice in eye index map");
      }
    }
  }
}

EyePair extract_eye_contours(const FaceMeshFrame& frame, const EyeIndexMap& map) {
  frame.validate();
  EyePair pair{select(frame, map.left_eye, EyeSide::kLeft),
               select(frame, map.right_eye, EyeSide::kRight)};
  check_width(pair.left);
  check_width(pair.right);
  return pair;
}

EyeContour canonicalize(const EyeContour& contour) {
  check_width(contour);
  if (contour.canonical) return contour;

  EyeContour out = contour;
  const double dx = contour.outer_corner().x - contour.inner_corner().x;
  if (dx == 0.0) {
    throw Error(ErrorCode::kDegenerateContour, "eye axis is vertical; face is rotated too far");
  }
  if (dx < 0.0) {
    double cx = 0.0;
    for (const Vec2& p : contour.points) cx += p.x;
    cx /= static_cast<double>(kContourSize);
    out.transform = {true, cx};
    for (Vec2& p : out.points) p = out.transform.apply(p);
  }

  // With p8 right of p0, the smaller-y side of the axis is side -1.
  const int upper = lid_side(out, 1, 7);
  const int lower = lid_side(out, 9, 15);
  if (upper > 0 || lower < 0 || (upper != 0 && upper == lower)) {
    throw Error(ErrorCode::kDegenerateContour,
                std::string(eye_side_name(contour.side)) +
                    " eye lids are not on opposite sides of the corner axis");
  }
  out.canonical = true;
  return out;
}

GuidancePolygon uncanonicalize(const GuidancePolygon& polygon, const EyeContour& contour) {
  if (!contour.transform.reflected) return polygon;
  GuidancePolygon out = polygon;
  for (Vec2& v : out.vertices) v = contour.transform.apply(v);
  if (out.vertices.size() > 1) std::reverse(out.vertices.begin() + 1, out.vertices.end());
  return out;
}

}  // namespace linerguide
