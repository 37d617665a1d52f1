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

#include "linerguide/engine.hpp"

#include "linerguide/error.hpp"

namespace linerguide {

ShapeAnalysis analyze_shape(const EyePair& eyes, const EngineConfig& cfg) {
  ShapeAnalysis out;
  out.features = analyze(eyes.left, eyes.right, cfg.classifier);
  out.left = recommend(out.features.left_labels, cfg.rules);
  out.right = recommend(out.features.right_labels, cfg.rules);
  return out;
}

EyeGuidance build_eye_guidance(const EyeContour& contour, const Recommendation& rec,
                               double eye_height, const StyleConfig& style) {
  const EyeContour c = canonicalize(contour);
  EyeGuidance g;
  g.side = contour.side;
  g.styles = rec.styles();
  g.thickness = thickness_for(rec.thickness, eye_height, style);
  for (std::size_t i = 0; i < kContourSize; ++i) g.contour[i] = c.original(i);

  const double h = g.thickness.h;
  GuidancePolygon upper =
      rec.wing ? style_with_wing(c, h, *rec.wing, style.wing) : style_basic(c, h);

  std::vector<GuidancePolygon> canonical;
  if (rec.lower == StyleId::kLowerOuter) {
    GuidancePolygon lower = style_lower_outer(c, g.thickness.h_lower_outer);
    if (rec.wing) {
      canonical.push_back(merge_outer_wing(upper, lower, wing_point(c, *rec.wing, style.wing)));
    } else {
      canonical.push_back(std::move(upper));
      canonical.push_back(std::move(lower));
    }
  } else if (rec.lower == StyleId::kLowerInner) {
    InnerMerge merged = merge_inner_basic(upper, style_lower_inner(c, h), c, h);
    g.fallback_used = merged.fallback_used;
    canonical.push_back(std::move(merged.polygon));
  } else {
    canonical.push_back(std::move(upper));
  }
  for (const GuidancePolygon& p : canonical) g.polygons.push_back(uncanonicalize(p, c));
  return g;
}

GuidanceFrame process_frame(const FaceMeshFrame& frame, const EngineConfig& cfg,
                            const ShapeAnalysis* frozen) {
  GuidanceFrame out;
  out.t = frame.timestamp_ms;
  out.frozen = frozen != nullptr;
  if (frozen) out.analysis = *frozen;

  EyePair eyes;
  double left_height = 0.0;
  double right_height = 0.0;
  try {
    eyes = extract_eye_contours(frame, cfg.index_map);
    eyes.left = canonicalize(eyes.left);
    eyes.right = canonicalize(eyes.right);
    if (frozen) {
      left_height = eye_features(eyes.left).height;
      right_height = eye_features(eyes.right).height;
    } else {
      out.analysis = analyze_shape(eyes, cfg);
      left_height = out.analysis->features.left.height;
      right_height = out.analysis->features.right.height;
    }
  } catch (const Error& e) {
    if (!is_detection_failure(e.code())) throw;
    out.status.error_code = std::string(error_code_name(e.code()));
    out.status.message = e.what();
    return out;
  }
  out.status.detection_ok = true;

  try {
    out.left = build_eye_guidance(eyes.left, out.analysis->left, left_height, cfg.style);
    out.right = build_eye_guidance(eyes.right, out.analysis->right, right_height, cfg.style);
  } catch (const Error& e) {
    out.left = {};
    out.right = {};
    out.status.error_code = std::string(error_code_name(e.code()));
    out.status.message = e.what();
    return out;
  }
  out.status.geometry_ok = true;
  out.status.fallback_used = out.left.fallback_used || out.right.fallback_used;
  return out;
}

Recommendation override_styles(Recommendation rec, std::span<const StyleId> styles) {
  for (StyleId s : styles) {
    if (s == StyleId::kBasic) {
      rec.wing.reset();
      rec.lower.reset();
    } else if (is_wing_variant(s)) {
      rec.wing = s;
    } else {
      rec.lower = s;
    }
    rec.rationale.push_back({"override=" + std::string(style_name(s)), "user style override"});
  }
  return rec;
}

}  // namespace linerguide
