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


#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "linerguide/config.hpp"
#include "linerguide/engine.hpp"
#include "linerguide/error.hpp"
#include "linerguide/geometry.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

namespace lg = linerguide;
using lg::StyleId;
using lg::Vec2;

namespace {

constexpr double kCrossT35 = -5.539062077133782;  // e30_oracle.py, h = 3.5

const lg::EngineConfig& cfg() { return lg::default_engine_config(); }

lg::FaceMeshFrame e30_frame() {
  const auto [l, r] = synth::place_pair(synth::e30(), synth::e30(), 32.0);
  return synth::make_frame(l, r);
}

}  // namespace

TEST_CASE("E30 frame end to end") {
  const lg::GuidanceFrame g = lg::process_frame(e30_frame(), cfg());
  REQUIRE(g.status.detection_ok);
  REQUIRE(g.status.geometry_ok);
  CHECK(g.status.error_code.empty());
  CHECK_FALSE(g.frozen);
  REQUIRE(g.analysis);
  CHECK(g.analysis->features.left_labels.size == lg::SizeLabel::kAverage);
  CHECK(g.analysis->features.left_labels.turn == lg::TurnLabel::kDownturned);
  CHECK(g.analysis->features.left_labels.spacing == lg::SpacingLabel::kOpen);

  for (const lg::EyeGuidance* eye : {&g.left, &g.right}) {
    CHECK(eye->styles ==
          std::vector<StyleId>{StyleId::kBasic, StyleId::kWinged, StyleId::kLowerInner});
    CHECK(eye->thickness.h == doctest::Approx(3.5).epsilon(1e-15));
    REQUIRE(eye->polygons.size() == 1);
    const auto& v = eye->polygons[0].vertices;
    CHECK(oracle::is_simple(v));
    CHECK(lg::winding_area(v) > 0);
    CHECK_FALSE(eye->fallback_used);
  }
  // Left eye is canonical in the image: the inner tip sits t = -5.539 past p0.
  const auto& lv = g.left.polygons[0].vertices;
  const Vec2 p0 = g.left.contour[0];
  CHECK(std::any_of(lv.begin(), lv.end(), [&](Vec2 v) {
    return std::abs(v.x - (p0.x + kCrossT35)) < 1e-9 && std::abs(v.y - p0.y) < 1e-12;
  }));

  // The right eye is the mirror image about x = 256.
  const auto& rv = g.right.polygons[0].vertices;
  REQUIRE(lv.size() == rv.size());
  const std::size_t n = lv.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 m = lv[i == 0 ? 0 : n - i];
    CHECK(std::abs(512.0 - m.x - rv[i].x) < 1e-9);
    CHECK(std::abs(m.y - rv[i].y) < 1e-12);
  }
  CHECK(g.left.polygons[0].side == lg::EyeSide::kLeft);
  CHECK(g.right.polygons[0].side == lg::EyeSide::kRight);
}

TEST_CASE("detection failure yields no polygons and no analysis") {
  synth::Points tiny{};
  for (std::size_t i = 0; i < 16; ++i) tiny[i] = {0.02 * i, 0.01 * (i % 2)};
  const auto [l, r] = synth::place_pair(tiny, tiny, 32.0);
  const lg::GuidanceFrame g = lg::process_frame(synth::make_frame(l, r, 512, 512, 7), cfg());
  CHECK(g.t == 7);
  CHECK_FALSE(g.status.detection_ok);
  CHECK_FALSE(g.status.geometry_ok);
  CHECK(g.status.error_code == "DegenerateContour");
  CHECK_FALSE(g.analysis.has_value());
  CHECK(g.left.polygons.empty());
  CHECK(g.right.polygons.empty());
}

TEST_CASE("collinear eye is a detection failure") {
  synth::Points flat = synth::e30();
  for (Vec2& p : flat) p.y = 0.0;
  const auto [l, r] = synth::place_pair(flat, synth::e30(), 32.0);
  const lg::GuidanceFrame g = lg::process_frame(synth::make_frame(l, r), cfg());
  CHECK_FALSE(g.status.detection_ok);
  CHECK(g.status.error_code == "HeightZero");
}

TEST_CASE("geometry failure keeps the analysis and drops the polygons") {
  synth::Points dented = synth::e30();
  dented[4].y = -0.5;
  const auto [l, r] = synth::place_pair(dented, synth::e30(), 32.0);
  lg::EngineConfig big = cfg();
  big.style.k_normal = big.style.k_reduced = 3.0;
  const lg::GuidanceFrame g = lg::process_frame(synth::make_frame(l, r), big);
  CHECK(g.status.detection_ok);
  CHECK_FALSE(g.status.geometry_ok);
  CHECK(g.status.error_code == "SelfIntersection");
  CHECK(g.analysis.has_value());
  CHECK(g.left.polygons.empty());
  CHECK(g.right.polygons.empty());
}

TEST_CASE("non-detection input errors propagate") {
  lg::FaceMeshFrame f = e30_frame();
  f.landmarks.resize(100);
  CHECK_THROWS_AS(lg::process_frame(f, cfg()), lg::Error);
}

TEST_CASE("build_eye_guidance: lower outer without a wing stays two polygons") {
  const lg::EyeContour c = lg::canonicalize(synth::contour(synth::e30()));
  lg::Recommendation rec;
  rec.lower = StyleId::kLowerOuter;
  const lg::EyeGuidance g = lg::build_eye_guidance(c, rec, 10.0, {});
  REQUIRE(g.polygons.size() == 2);
  CHECK(g.polygons[0].style_label() == "Basic");
  CHECK(g.polygons[1].style_label() == "LowerOuter");

  rec.wing = StyleId::kDrop;
  const lg::EyeGuidance m = lg::build_eye_guidance(c, rec, 10.0, {});
  REQUIRE(m.polygons.size() == 1);
  CHECK(m.polygons[0].style_label() == "Basic+Drop+LowerOuter");
  CHECK(oracle::is_simple(m.polygons[0].vertices));
}

TEST_CASE("frozen analysis drives labels, current frame drives geometry") {
  const lg::GuidanceFrame live = lg::process_frame(e30_frame(), cfg());
  lg::ShapeAnalysis frozen = *live.analysis;
  frozen.left = lg::override_styles(frozen.left, std::vector<StyleId>{StyleId::kExtend});

  synth::Similarity s;
  s.shift = {10, -4};
  s.theta = 0.1;
  s.center = {256, 240};
  const lg::FaceMeshFrame moved = synth::transform_frame(e30_frame(), s);
  const lg::GuidanceFrame g = lg::process_frame(moved, cfg(), &frozen);
  CHECK(g.frozen);
  REQUIRE(g.analysis);
  CHECK(*g.analysis == frozen);
  CHECK(g.left.styles ==
        std::vector<StyleId>{StyleId::kBasic, StyleId::kExtend, StyleId::kLowerInner});
  CHECK(lg::distance(g.left.contour[0], s.apply(live.left.contour[0])) < 1e-9);
  CHECK(g.left.polygons[0].vertices[0] == g.left.contour[0]);
}

TEST_CASE("override_styles") {
  lg::Recommendation r =
      lg::recommend({lg::SizeLabel::kAverage, lg::TurnLabel::kDownturned, lg::SpacingLabel::kOpen},
                    cfg().rules);
  const auto before = r.rationale.size();
  const lg::Recommendation basic = lg::override_styles(r, std::vector<StyleId>{StyleId::kBasic});
  CHECK_FALSE(basic.wing);
  CHECK_FALSE(basic.lower);
  CHECK(basic.rationale.size() == before + 1);
  const lg::Recommendation mix = lg::override_styles(
      r, std::vector<StyleId>{StyleId::kBasic, StyleId::kDrop, StyleId::kLowerOuter});
  CHECK(mix.wing == StyleId::kDrop);
  CHECK(mix.lower == StyleId::kLowerOuter);
  CHECK(mix.rationale.back().label == "override=LowerOuter");
}

TEST_CASE("property: engine is pure and equivariant on random faces") {
  synth::Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto [pl, sl] = synth::random_shape(rng);
    const auto [pr, sr] = synth::random_shape(rng);
    const auto [l, r] = synth::place_pair(sl, sr, synth::uniform(rng, 20, 70));
    const lg::FaceMeshFrame f = synth::make_frame(l, r);
    const lg::GuidanceFrame a = lg::process_frame(f, cfg());
    CHECK(a == lg::process_frame(f, cfg()));
    if (!a.status.geometry_ok) continue;
    const synth::Similarity s = synth::random_similarity(rng, {256, 240});
    const lg::GuidanceFrame b = lg::process_frame(synth::transform_frame(f, s), cfg());
    REQUIRE(b.status.geometry_ok);
    CHECK(b.analysis->features.left_labels == a.analysis->features.left_labels);
    CHECK(b.analysis->features.right_labels == a.analysis->features.right_labels);
    for (auto [ea, eb] : {std::pair{&a.left, &b.left}, std::pair{&a.right, &b.right}}) {
      REQUIRE(ea->polygons.size() == eb->polygons.size());
      for (std::size_t k = 0; k < ea->polygons.size(); ++k) {
        const auto& va = ea->polygons[k].vertices;
        const auto& vb = eb->polygons[k].vertices;
        REQUIRE(va.size() == vb.size());
        for (std::size_t i = 0; i < va.size(); ++i) CHECK(lg::distance(s.inverse(vb[i]), va[i]) < 1e-6);
      }
    }
  }
}
