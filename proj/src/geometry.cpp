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

#include "linerguide/geometry.hpp"

#include <algorithm>

namespace linerguide {
namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// p is known collinear with a-b; checks it lies within the segment's box.
bool within_segment(Vec2 p, Vec2 a, Vec2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

int side_of_line(Vec2 p, Vec2 a, Vec2 b) { return sign(cross(b - a, p - a)); }

double distance_to_line(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  return std::abs(cross(d, p - a)) / norm(d);
}

double included_angle(Vec2 u, Vec2 v) {
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

double shoelace_area(std::span<const Vec2> ring) {
  const std::size_t n = ring.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += cross(ring[i], ring[(i + 1) % n]);
  }
  return 0.5 * sum;
}

bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  const int o1 = side_of_line(b0, a0, a1);
  const int o2 = side_of_line(b1, a0, a1);
  const int o3 = side_of_line(a0, b0, b1);
  const int o4 = side_of_line(a1, b0, b1);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && within_segment(b0, a0, a1)) return true;
  if (o2 == 0 && within_segment(b1, a0, a1)) return true;
  if (o3 == 0 && within_segment(a0, b0, b1)) return true;
  if (o4 == 0 && within_segment(a1, b0, b1)) return true;
  return false;
}

std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(
    std::span<const Vec2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return std::pair<std::size_t, std::size_t>{0, 0};
  auto edge_start = [&](std::size_t i) { return ring[i]; };
  auto edge_end = [&](std::size_t i) { return ring[(i + 1) % n]; };

  for (std::size_t i = 0; i < n; ++i) {
    if (edge_start(i) == edge_end(i)) return std::pair{i, i};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool j_follows_i = (j == i + 1);
      const bool i_follows_j = (i == 0 && j == n - 1);
      if (j_follows_i || i_follows_j) {
        // Shared vertex s; the edges overlap iff the far ends are collinear
        // with s and on the same side of it.
        const Vec2 s = j_follows_i ? edge_end(i) : edge_start(i);
        const Vec2 u = (j_follows_i ? edge_start(i) : edge_end(i)) - s;
        const Vec2 v = (j_follows_i ? edge_end(j) : edge_start(j)) - s;
        if (cross(u, v) == 0.0 && dot(u, v) > 0.0) return std::pair{i, j};
        continue;
      }
      if (segments_intersect(edge_start(i), edge_end(i), edge_start(j), edge_end(j))) {
        return std::pair{i, j};
      }
    }
  }
  return std::nullopt;
}

}  // namespace linerguide
