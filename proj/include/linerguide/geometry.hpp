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

#ifndef LINERGUIDE_GEOMETRY_HPP_
#define LINERGUIDE_GEOMETRY_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>

namespace linerguide {

// 2-D point or vector in pixel coordinates, y pointing down.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
// z-component of the 3-D cross product.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }
constexpr Vec2 midpoint(Vec2 a, Vec2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
// Rotates by +90 degrees in the (x, y) frame.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
// Caller guarantees a != 0.
inline Vec2 normalized(Vec2 a) { return (1.0 / norm(a)) * a; }
inline Vec2 rotated(Vec2 a, double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

constexpr double kPi = 3.14159265358979323846;
constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Sign of p relative to the directed line a->b: +1, -1 or 0 for collinear.
int side_of_line(Vec2 p, Vec2 a, Vec2 b);

// Unsigned perpendicular distance from p to the infinite line through a and b.
double distance_to_line(Vec2 p, Vec2 a, Vec2 b);

// Unsigned angle in [0, pi] between vectors u and v; both must be non-zero.
double included_angle(Vec2 u, Vec2 v);

// Shoelace sum / 2 of a closed ring (last vertex connects to the first).
double shoelace_area(std::span<const Vec2> ring);

// Area under the project's winding convention: positive for rings that are
// counter-clockwise on a y-down raster, i.e. a negative shoelace sum.
inline double winding_area(std::span<const Vec2> ring) { return -shoelace_area(ring); }

// Closed-segment intersection test, including touching and collinear overlap.
bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

// Edge indices (i, j), i <= j, of the first pair of ring edges that violates
// simplicity, or nullopt for a simple ring. Edge i runs from vertex i to
// vertex i+1 (mod n). Adjacent edges may only share their common vertex;
// non-adjacent edges may not touch at all. A zero-length edge i reports (i, i).
std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(
    std::span<const Vec2> ring);

inline bool is_simple(std::span<const Vec2> ring) {
  return ring.size() >= 3 && !find_self_intersection(ring).has_value();
}

}  // namespace linerguide

#endif  // LINERGUIDE_GEOMETRY_HPP_
