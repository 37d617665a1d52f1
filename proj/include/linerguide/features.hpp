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

#ifndef LINERGUIDE_FEATURES_HPP_
#define LINERGUIDE_FEATURES_HPP_

#include <string_view>

#include "linerguide/landmarks.hpp"

namespace linerguide {

// Per-eye shape measurements. Lengths in pixels, angles in degrees.
struct EyeFeatures {
  double width = 0.0;
  double height = 0.0;
  double aspect_ratio = 0.0;
  double alpha_deg = 0.0;
  double beta_deg = 0.0;

  friend bool operator==(const EyeFeatures&, const EyeFeatures&) = default;
};

struct SpacingFeatures {
  double d_e = 0.0;    // inner-corner to inner-corner gap
  double d_avg = 0.0;  // mean eye width

  double ratio() const { return d_e / d_avg; }
  friend bool operator==(const SpacingFeatures&, const SpacingFeatures&) = default;
};

enum class SizeLabel { kSmall, kAverage, kBig };
enum class TurnLabel { kUpturned, kDownturned };
enum class SpacingLabel { kClose, kAverage, kOpen };

inline constexpr SizeLabel kAllSizeLabels[] = {SizeLabel::kSmall, SizeLabel::kAverage,
                                               SizeLabel::kBig};
inline constexpr TurnLabel kAllTurnLabels[] = {TurnLabel::kUpturned, TurnLabel::kDownturned};
inline constexpr SpacingLabel kAllSpacingLabels[] = {SpacingLabel::kClose,
                                                     SpacingLabel::kAverage,
                                                     SpacingLabel::kOpen};

std::string_view label_name(SizeLabel v);
std::string_view label_name(TurnLabel v);
std::string_view label_name(SpacingLabel v);

struct EyeShapeLabels {
  SizeLabel size = SizeLabel::kAverage;
  TurnLabel turn = TurnLabel::kUpturned;
  SpacingLabel spacing = SpacingLabel::kAverage;

  friend bool operator==(const EyeShapeLabels&, const EyeShapeLabels&) = default;
};

struct ClassifierConfig {
  double a_low = 2.75;
  double a_high = 3.00;
  double spacing_lo = 0.95;
  double spacing_hi = 1.05;
  TurnLabel turn_tiebreak = TurnLabel::kUpturned;

  // Throws Error(kBadConfig) unless 0 < a_low < a_high and
  // 0 < spacing_lo < 1 < spacing_hi.
  void validate() const;

  friend bool operator==(const ClassifierConfig&, const ClassifierConfig&) = default;
};

// Relative band around each threshold that counts as "on" the boundary, so
// round-off from a similarity transform cannot flip a boundary label.
inline constexpr double kBoundaryTolerance = 1e-9;

double eye_width(const EyeContour& c);

// Largest upper-lid distance to the corner axis plus largest lower-lid
// distance.
double eye_height(const EyeContour& c);

// Throws Error(kHeightZero) when height is zero.
double aspect_ratio(double width, double height);

SizeLabel classify_size(double a, const ClassifierConfig& cfg);

struct CornerAngles {
  double alpha_deg = 0.0;  // at p8, between p8->p4 and p8->p0
  double beta_deg = 0.0;   // at p8, between p8->p12 and p8->p0
};

// Throws Error(kDegenerateAngle) if p4 or p12 coincides with p8.
CornerAngles corner_angles(const EyeContour& c);

TurnLabel classify_turn(double alpha_deg, double beta_deg, const ClassifierConfig& cfg);

// Inner corners are compared in original image coordinates, so canonicalized
// and raw contours give the same answer.
SpacingFeatures spacing_features(const EyeContour& left, const EyeContour& right);

SpacingLabel classify_spacing(const SpacingFeatures& s, const ClassifierConfig& cfg);

EyeFeatures eye_features(const EyeContour& c);

struct FaceAnalysis {
  EyeFeatures left;
  EyeFeatures right;
  SpacingFeatures spacing;
  EyeShapeLabels left_labels;
  EyeShapeLabels right_labels;

  friend bool operator==(const FaceAnalysis&, const FaceAnalysis&) = default;
};

// Full rule-based classification of one face. The spacing label is shared by
// both eyes. Propagates kHeightZero and kDegenerateAngle.
FaceAnalysis analyze(const EyeContour& left, const EyeContour& right,
                     const ClassifierConfig& cfg);

}  // namespace linerguide

#endif  // LINERGUIDE_FEATURES_HPP_
