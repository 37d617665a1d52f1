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

#include "linerguide/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linerguide/error.hpp"

namespace linerguide {

std::string_view label_name(SizeLabel v) {
  switch (v) {
    case SizeLabel::kSmall: return "Small";
    case SizeLabel::kAverage: return "Average";
    case SizeLabel::kBig: return "Big";
  }
  return "?";
}

std::string_view label_name(TurnLabel v) {
  return v == TurnLabel::kUpturned ? "Upturned" : "Downturned";
}

std::string_view label_name(SpacingLabel v) {
  switch (v) {
    case SpacingLabel::kClose: return "Close";
    case SpacingLabel::kAverage: return "Average";
    case SpacingLabel::kOpen: return "Open";
  }
  return "?";
}

void ClassifierConfig::validate() const {
  const bool finite = std::isfinite(a_low) && std::isfinite(a_high) &&
                      std::isfinite(spacing_lo) && std::isfinite(spacing_hi);
  if (!finite || !(a_low > 0.0) || !(a_low < a_high)) {
    throw Error(ErrorCode::kBadConfig, "classifier requires 0 < a_low < a_high");
  }
  if (!(spacing_lo > 0.0 && spacing_lo < 1.0 && 1.0 < spacing_hi)) {
    throw Error(ErrorCode::kBadConfig, "classifier requires 0 < spacing_lo < 1 < spacing_hi");
  }
}

double eye_width(const EyeContour& c) { return distance(c.inner_corner(), c.outer_corner()); }

double eye_height(const EyeContour& c) {
  const Vec2 a = c.inner_corner();
  const Vec2 b = c.outer_corner();
  double upper = 0.0;
  double lower = 0.0;
  for (std::size_t i = 1; i < kOuterCorner; ++i) {
    upper = std::max(upper, distance_to_line(c.points[i], a, b));
  }
  for (std::size_t i = kOuterCorner + 1; i < kContourSize; ++i) {
    lower = std::max(lower, distance_to_line(c.points[i], a, b));
  }
  return upper + lower;
}

double aspect_ratio(double width, double height) {
  if (height == 0.0) {
    throw Error(ErrorCode::kHeightZero, "eye height is zero; contour is collinear");
  }
  return width / height;
}

SizeLabel classify_size(double a, const ClassifierConfig& cfg) {
  if (a < cfg.a_low * (1.0 - kBoundaryTolerance)) return SizeLabel::kBig;
  if (a > cfg.a_high * (1.0 + kBoundaryTolerance)) return SizeLabel::kSmall;
  return SizeLabel::kAverage;
}

CornerAngles corner_angles(const EyeContour& c) {
  const Vec2 p8 = c.outer_corner();
  if (c.upper_apex() == p8 || c.lower_apex() == p8) {
    throw Error(ErrorCode::kDegenerateAngle, "lid apex coincides with the outer corner");
  }
  const Vec2 axis = c.inner_corner() - p8;
  return {rad_to_deg(included_angle(c.upper_apex() - p8, axis)),
          rad_to_deg(included_angle(c.lower_apex() - p8, axis))};
}

TurnLabel classify_turn(double alpha_deg, double beta_deg, const ClassifierConfig& cfg) {
  const double band = kBoundaryTolerance * std::max(alpha_deg, beta_deg);
  if (alpha_deg - beta_deg > band) return TurnLabel::kDownturned;
  if (beta_deg - alpha_deg > band) return TurnLabel::kUpturned;
  return cfg.turn_tiebreak;
}

SpacingFeatures spacing_features(const EyeContour& left, const EyeContour& right) {
  return {distance(left.original(kInnerCorner), right.original(kInnerCorner)),
          0.5 * (eye_width(left) + eye_width(right))};
}

SpacingLabel classify_spacing(const SpacingFeatures& s, const ClassifierConfig& cfg) {
  const double r = s.ratio();
  if (r > cfg.spacing_hi * (1.0 + kBoundaryTolerance)) return SpacingLabel::kOpen;
  if (r < cfg.spacing_lo * (1.0 - kBoundaryTolerance)) return SpacingLabel::kClose;
  return SpacingLabel::kAverage;
}

EyeFeatures eye_features(const EyeContour& c) {
  EyeFeatures f;
  f.width = eye_width(c);
  f.height = eye_height(c);
  f.aspect_ratio = aspect_ratio(f.width, f.height);
  const CornerAngles angles = corner_angles(c);
  f.alpha_deg = angles.alpha_deg;
  f.beta_deg = angles.beta_deg;
  return f;
}

FaceAnalysis analyze(const EyeContour& left, const EyeContour& right,
                     const ClassifierConfig& cfg) {
  FaceAnalysis out;
  out.left = eye_features(left);
  out.right = eye_features(right);
  out.spacing = spacing_features(left, right);
  const SpacingLabel spacing = classify_spacing(out.spacing, cfg);
  out.left_labels = {classify_size(out.left.aspect_ratio, cfg),
                     classify_turn(out.left.alpha_deg, out.left.beta_deg, cfg), spacing};
  out.right_labels = {classify_size(out.right.aspect_ratio, cfg),
                      classify_turn(out.right.alpha_deg, out.right.beta_deg, cfg), spacing};
  return out;
}

}  // namespace linerguide
