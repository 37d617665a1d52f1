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

#include "linerguide/styles.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>

#include "linerguide/error.hpp"

namespace linerguide {
namespace {

struct Axis {
  Vec2 origin;  // p0
  Vec2 dir;     // unit(p8 - p0)
  Vec2 up;      // unit normal of the axis pointing to the upper-lid side
  double width;
};

Axis eye_axis(const EyeContour& c) {
  const Vec2 p0 = c.inner_corner();
  const Vec2 p8 = c.outer_corner();
  Axis axis{p0, normalized(p8 - p0), {}, distance(p0, p8)};
  // perp(dir) sits on side +1 of p0->p8.
  const Vec2 n = perp(axis.dir);
  int upper_side = -side_of_line(c.lower_apex(), p0, p8);
  if (upper_side == 0) upper_side = side_of_line(c.upper_apex(), p0, p8);
  if (upper_side == 0) upper_side = -1;  // canonical frame: smaller y is up
  axis.up = upper_side > 0 ? n : -n;
  return axis;
}

// Offsets the midpoint of a-b by `h` along the segment normal with a positive
// component on `away`. A segment perpendicular to the axis falls back to a
// side-of-line test against `interior`.
Vec2 offset_segment(Vec2 a, Vec2 b, double h, Vec2 away, Vec2 interior) {
  const Vec2 d = b - a;
  if (d == Vec2{}) {
    throw Error(ErrorCode::kZeroLengthSegment, "consecutive lid points coincide");
  }
  Vec2 n = normalized(perp(d));
  const double along = dot(n, away);
  if (along < 0.0 || (along == 0.0 && side_of_line(a + n, a, b) == side_of_line(interior, a, b))) {
    n = -n;
  }
  return midpoint(a, b) + h * n;
}

void require_simple(const GuidancePolygon& poly, ErrorCode code) {
  if (auto hit = find_self_intersection(poly.vertices)) {
    throw Error(code, poly.style_label() + " polygon self-intersects at edges " +
                          std::to_string(hit->first) + " and " + std::to_string(hit->second));
  }
}

GuidancePolygon lower_ring(const EyeContour& c, StyleId style,
                           std::initializer_list<std::size_t> lid,
                           std::initializer_list<double> thickness) {
  const Axis axis = eye_axis(c);
  GuidancePolygon poly;
  poly.styles = {style};
  poly.side = c.side;
  std::vector<std::size_t> ids(lid);
  std::vector<double> hs(thickness);
  for (std::size_t i : ids) poly.vertices.push_back(c.points[i]);
  for (std::size_t k = hs.size(); k-- > 0;) {
    poly.vertices.push_back(offset_segment(c.points[ids[k]], c.points[ids[k + 1]], hs[k],
                                           -axis.up, c.upper_apex()));
  }
  require_simple(poly, ErrorCode::kSelfIntersection);
  return poly;
}

// Real roots of c2 t^2 + c1 t + c0, ascending.
std::vector<double> quadratic_roots(double c2, double c1, double c0) {
  std::vector<double> roots;
  if (c2 == 0.0) {
    if (c1 != 0.0) roots.push_back(-c0 / c1);
    return roots;
  }
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) return roots;
  const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
  if (q != 0.0) roots.push_back(c0 / q);
  roots.push_back(q / c2);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Least-squares quadratic via the normal equations, Gaussian elimination with
// partial pivoting. Returns {c0, c1, c2}.
std::array<double, 3> fit_quadratic(const std::vector<std::pair<double, double>>& samples) {
  double m[3][4] = {};
  for (const auto& [t, s] : samples) {
    const double basis[3] = {1.0, t, t * t};
    for (int r = 0; r < 3; ++r) {
      for (int k = 0; k < 3; ++k) m[r][k] += basis[r] * basis[k];
      m[r][3] += basis[r] * s;
    }
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    std::swap(m[col], m[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[r][k] -= f * m[col][k];
    }
  }
  std::array<double, 3> c{};
  for (int r = 2; r >= 0; --r) {
    double acc = m[r][3];
    for (int k = r + 1; k < 3; ++k) acc -= m[r][k] * c[static_cast<std::size_t>(k)];
    c[static_cast<std::size_t>(r)] = acc / m[r][r];
  }
  return c;
}

}  // namespace

void StyleConfig::validate() const {
  if (!(k_normal > 0.0) || !(k_reduced > 0.0) || !std::isfinite(k_normal) ||
      !std::isfinite(k_reduced)) {
    throw Error(ErrorCode::kBadConfig, "thickness factors must be positive");
  }
  if (!(wing.angle_deg > 0.0 && wing.angle_deg < 90.0)) {
    throw Error(ErrorCode::kBadConfig, "wing angle must lie in (0, 90) degrees");
  }
  if (!(wing.length_ratio > 0.0 && wing.length_ratio < 1.0)) {
    throw Error(ErrorCode::kBadConfig, "wing length ratio must lie in (0, 1)");
  }
}

ThicknessProfile thickness_for(ThicknessClass cls, double eye_height, const StyleConfig& cfg) {
  const double k = cls == ThicknessClass::kReduced ? cfg.k_reduced : cfg.k_normal;
  return ThicknessProfile::from_upper(k * eye_height);
}

std::array<Vec2, 8> offset_points(const EyeContour& c, double h) {
  const Axis axis = eye_axis(c);
  std::array<Vec2, 8> out;
  for (std::size_t i = 0; i < 8; ++i) {
    out[i] = offset_segment(c.points[i], c.points[i + 1], h, axis.up, c.lower_apex());
  }
  return out;
}

GuidancePolygon style_basic(const EyeContour& c, double h) {
  const auto offsets = offset_points(c, h);
  GuidancePolygon poly;
  poly.styles = {StyleId::kBasic};
  poly.side = c.side;
  poly.vertices.reserve(17);
  for (std::size_t i = 0; i <= kOuterCorner; ++i) poly.vertices.push_back(c.points[i]);
  for (std::size_t i = offsets.size(); i-- > 0;) poly.vertices.push_back(offsets[i]);
  require_simple(poly, ErrorCode::kSelfIntersection);
  return poly;
}

Vec2 wing_point(const EyeContour& c, StyleId variant, const WingSpec& wing) {
  const Axis axis = eye_axis(c);
  const Vec2 p8 = c.outer_corner();
  const double length = wing.length_ratio * axis.width;
  switch (variant) {
    case StyleId::kWinged: {
      const double a = deg_to_rad(wing.angle_deg);
      return p8 + length * (std::cos(a) * axis.dir + std::sin(a) * axis.up);
    }
    case StyleId::kDrop: {
      if (c.upper_apex() == p8) {
        throw Error(ErrorCode::kDegenerateAngle, "upper apex coincides with the outer corner");
      }
      return p8 + length * normalized(p8 - c.upper_apex());
    }
    case StyleId::kExtend:
      return p8 + length * axis.dir;
    default:
      throw std::invalid_argument("wing_point: not a wing variant: " +
                                  std::string(style_name(variant)));
  }
}

GuidancePolygon style_with_wing(const EyeContour& c, double h, StyleId variant,
                                const WingSpec& wing) {
  const Vec2 tip = wing_point(c, variant, wing);
  GuidancePolygon poly = style_basic(c, h);
  poly.styles.push_back(variant);
  poly.vertices.insert(poly.vertices.begin() + kOuterCorner + 1, tip);
  require_simple(poly, ErrorCode::kSelfIntersection);
  return poly;
}

GuidancePolygon style_lower_outer(const EyeContour& c, double h) {
  return lower_ring(c, StyleId::kLowerOuter, {8, 9, 10, 11}, {h, 2.0 * h / 3.0, h / 3.0});
}

GuidancePolygon style_lower_inner(const EyeContour& c, double h) {
  const double thin = h / 3.0;
  return lower_ring(c, StyleId::kLowerInner, {13, 14, 15, 0}, {thin, thin, thin});
}

GuidancePolygon merge_outer_wing(const GuidancePolygon& upper, const GuidancePolygon& lower,
                                 Vec2 wing_tip) {
  if (lower.vertices.empty()) return upper;
  const auto& up = upper.vertices;
  const auto tip = std::find(up.begin(), up.end(), wing_tip);
  if (tip == up.end() || tip == up.begin() || *(tip - 1) != lower.vertices.front() ||
      lower.vertices.size() < 3) {
    throw Error(ErrorCode::kInvalidMergeInput,
                "upper ring must contain the wing tip right after the lower ring's first vertex");
  }
  GuidancePolygon merged;
  merged.side = upper.side;
  merged.styles = upper.styles;
  merged.styles.insert(merged.styles.end(), lower.styles.begin(), lower.styles.end());
  merged.vertices.assign(up.begin(), tip);
  merged.vertices.insert(merged.vertices.end(), lower.vertices.begin() + 1, lower.vertices.end());
  merged.vertices.insert(merged.vertices.end(), tip, up.end());
  require_simple(merged, ErrorCode::kMergeSelfIntersection);
  return merged;
}

InnerMerge merge_inner_basic(const GuidancePolygon& upper, const GuidancePolygon& lower,
                             const EyeContour& c, double h) {
  const Axis axis = eye_axis(c);
  const auto offsets = offset_points(c, h);
  InnerMerge out;
  if (lower.vertices.empty()) {
    out.polygon = upper;
    out.cross_point = c.inner_corner();
    return out;
  }
  const auto& up = upper.vertices;
  const auto& lo = lower.vertices;
  if (up.size() < 17 || up.front() != c.inner_corner() || up.back() != offsets[0] ||
      lo.size() != 7 || lo[3] != c.inner_corner()) {
    throw Error(ErrorCode::kInvalidMergeInput,
                "merge_inner_basic expects a Basic-derived upper ring and a LowerInner ring");
  }

  // Fit in t / width so the normal equations stay well conditioned.
  std::vector<std::pair<double, double>> samples;
  for (const Vec2& q : offsets) {
    const Vec2 rel = q - axis.origin;
    samples.emplace_back(dot(rel, axis.dir) / axis.width, dot(rel, axis.up));
  }
  const auto [c0, c1, c2] = fit_quadratic(samples);
  std::optional<double> best;
  for (double tau : quadratic_roots(c2, c1, c0)) {
    if (tau < 0.0 && tau >= -1.0 && (!best || tau > *best)) best = tau;  // nearest p0
  }
  if (best) {
    out.cross_t = *best * axis.width;
  } else {
    out.cross_t = -h / 3.0;
    out.fallback_used = true;
  }
  out.cross_point = axis.origin + out.cross_t * axis.dir;

  GuidancePolygon& merged = out.polygon;
  merged.side = upper.side;
  merged.styles = upper.styles;
  merged.styles.insert(merged.styles.end(), lower.styles.begin(), lower.styles.end());
  merged.vertices = up;
  merged.vertices.push_back(out.cross_point);
  merged.vertices.insert(merged.vertices.end(), lo.begin() + 4, lo.end());
  merged.vertices.insert(merged.vertices.end(), lo.begin(), lo.begin() + 3);
  require_simple(merged, ErrorCode::kMergeSelfIntersection);
  return out;
}

}  // namespace linerguide
