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


#include <thread>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "linerguide/config.hpp"
#include "linerguide/error.hpp"
#include "linerguide/serialize.hpp"
#include "linerguide/service.hpp"
#include "support/synthetic.hpp"

namespace lg = linerguide;
using nlohmann::json;

namespace {

lg::FaceMeshFrame face(double a, std::int64_t t = 0, double shift = 0.0) {
  synth::ShapeParams p;
  p.width = 32.0;
  p.a = a;
  p.alpha_deg = 14.0;
  p.beta_deg = 20.0;
  const auto made = synth::make_shape(p);
  REQUIRE(made);
  const synth::Points shape = *made;
  auto [l, r] = synth::place_pair(shape, shape, 32.0, {256.0 + shift, 240.0});
  return synth::make_frame(l, r, 512, 512, t);
}

lg::FaceMeshFrame blink(std::int64_t t = 0) {
  synth::Points tiny{};
  for (std::size_t i = 0; i < 16; ++i) tiny[i] = {0.02 * i, 0.01 * (i % 2)};
  const auto [l, r] = synth::place_pair(tiny, tiny, 32.0);
  return synth::make_frame(l, r, 512, 512, t);
}

json frame_message(const lg::FaceMeshFrame& f) {
  json lms = json::array();
  for (const lg::Vec2& p : f.landmarks) lms.push_back({p.x, p.y});
  return {{"type", "frame"}, {"t", f.timestamp_ms}, {"landmarks", lms}};
}

lg::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const lg::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return lg::ErrorCode::kBadConfig;
}

}  // namespace

TEST_CASE("open_session") {
  lg::SessionManager mgr(lg::default_engine_config(), 1);
  const auto s = mgr.open_session();
  CHECK(s->state() == lg::SessionState::kLive);
  CHECK(s->config().classifier.a_low == 2.75);
  CHECK(s->config().classifier.a_high == 3.00);
  CHECK(s->config().classifier.spacing_hi == 1.05);
  CHECK(s->config().classifier.spacing_lo == 0.95);
  CHECK(s->image_size() == std::pair{640, 480});

  const auto t = mgr.open_session({{"a_high", 3.1}, {"image", {{"w", 512}, {"h", 512}}}});
  CHECK(t->config().classifier.a_high == 3.1);
  CHECK(t->image_size() == std::pair{512, 512});
  CHECK(t->id() != s->id());
  CHECK(mgr.find(t->id()) == t);
  CHECK(mgr.size() == 2);

  CHECK(code_of([&] { mgr.open_session({{"a_high", "tall"}}); }) == lg::ErrorCode::kBadConfig);
  CHECK(code_of([&] { mgr.open_session(json::array()); }) == lg::ErrorCode::kBadConfig);
  CHECK(code_of([&] { mgr.open_session({{"rules", {{"turn", {{"Upturned", "Glitter"}}}}}}); }) ==
        lg::ErrorCode::kBadConfig);
  CHECK(code_of([&] { mgr.open_session({{"image", {{"w", -1}, {"h", 4}}}}); }) ==
        lg::ErrorCode::kBadConfig);
  CHECK(code_of([&] { mgr.find("nope"); }) == lg::ErrorCode::kUnknownSession);
  CHECK(mgr.close(t->id()));
  CHECK_FALSE(mgr.close(t->id()));
}

TEST_CASE("live frames equal direct engine calls") {
  lg::Session s("a", lg::default_engine_config(), 512, 512);
  for (double a : {2.5, 2.9, 3.3}) {
    const lg::FaceMeshFrame f = face(a);
    CHECK(s.submit_frame(f) == lg::process_frame(f, lg::default_engine_config()));
  }
  const lg::SessionStats st = s.stats();
  CHECK(st.frames_processed == 3);
  CHECK(st.detection_failures == 0);
  CHECK(st.last_latency_ms > 0.0);
}

TEST_CASE("freeze requires a good frame") {
  lg::Session s("a", lg::default_engine_config(), 512, 512);
  CHECK(code_of([&] { s.freeze(); }) == lg::ErrorCode::kNothingToFreeze);
  const lg::GuidanceFrame g = s.submit_frame(blink());
  CHECK_FALSE(g.status.detection_ok);
  CHECK(g.left.polygons.empty());
  CHECK(s.stats().detection_failures == 1);
  CHECK(code_of([&] { s.freeze(); }) == lg::ErrorCode::kNothingToFreeze);
  CHECK(s.state() == lg::SessionState::kLive);
}

TEST_CASE("freeze keeps labels across the a = 3.00 boundary") {
  lg::Session s("a", lg::default_engine_config(), 512, 512);
  const lg::GuidanceFrame before = s.submit_frame(face(2.9));
  REQUIRE(before.analysis->features.left_labels.size == lg::SizeLabel::kAverage);
  s.freeze();
  CHECK(s.state() == lg::SessionState::kFrozen);
  REQUIRE(s.frozen_analysis());
  CHECK(*s.frozen_analysis() == *before.analysis);

  const lg::FaceMeshFrame wide = face(3.1, 16, 12.0);
  CHECK(lg::process_frame(wide, lg::default_engine_config()).analysis->features.left_labels.size ==
        lg::SizeLabel::kSmall);
  const lg::GuidanceFrame after = s.submit_frame(wide);
  CHECK(after.frozen);
  CHECK(after.analysis->features.left_labels.size == lg::SizeLabel::kAverage);
  CHECK(after.left.contour[0].x == doctest::Approx(before.left.contour[0].x + 12.0));
  CHECK(after.left.polygons[0].vertices != before.left.polygons[0].vertices);
  CHECK(s.submit_frame(wide) == after);

  // A blink while frozen is still reported with no polygons.
  const lg::GuidanceFrame closed = s.submit_frame(blink(40));
  CHECK_FALSE(closed.status.detection_ok);
  CHECK(closed.left.polygons.empty());

  s.unfreeze();
  CHECK(s.state() == lg::SessionState::kLive);
  CHECK_FALSE(s.frozen_analysis());
  CHECK(s.submit_frame(wide).analysis->features.left_labels.size == lg::SizeLabel::kSmall);
  s.unfreeze();  // no-op on a live session
  CHECK(s.state() == lg::SessionState::kLive);
  s.freeze();
  CHECK(s.frozen_analysis()->features.left_labels.size == lg::SizeLabel::kSmall);
}

TEST_CASE("message protocol") {
  lg::Session s("a", lg::default_engine_config(), 512, 512);
  CHECK(s.handle_message(json{{"type", "freeze"}})["code"] == "NothingToFreeze");

  const lg::FaceMeshFrame f = face(2.9, 5);
  const json g = s.handle_message(frame_message(f));
  CHECK(g == lg::guidance_message(lg::process_frame(f, lg::default_engine_config())));
  CHECK(g["type"] == "guidance");
  CHECK(g["t"] == 5);

  const json frozen = s.handle_message(std::string_view(R"({"type":"freeze"})"));
  CHECK(frozen["type"] == "state");
  CHECK(frozen["state"] == "frozen");
  CHECK(frozen["labels"]["left"]["size"] == "Average");
  CHECK(s.handle_message(json{{"type", "unfreeze"}})["state"] == "live");

  CHECK(s.handle_message(std::string_view("{\"type\":")) ["code"] == "SchemaError");
  CHECK(s.handle_message(json{{"type", "dance"}})["code"] == "SchemaError");
  CHECK(s.handle_message(json{{"t", 1}})["code"] == "SchemaError");
  json short_frame = frame_message(f);
  short_frame["landmarks"].erase(0);
  CHECK(s.handle_message(short_frame)["code"] == "SchemaError");

  json sized = frame_message(f);
  sized["image"] = {{"w", 1024}, {"h", 1024}};
  const json big = s.handle_message(sized);
  CHECK(big["type"] == "guidance");
  CHECK(s.image_size() == std::pair{1024, 1024});
  sized["image"] = {{"w", 0}, {"h", 1}};
  CHECK(s.handle_message(sized)["code"] == "SchemaError");

  const json stats = s.stats_json();
  CHECK(stats["id"] == "a");
  CHECK(stats["frames_processed"] == 2);
  CHECK(stats["state"] == "live");
}

TEST_CASE("concurrent sessions match serial runs") {
  lg::SessionManager mgr(lg::default_engine_config(), 3);
  const std::vector<json> overrides = {nullptr, {{"a_high", 2.8}}, {{"a_low", 3.0}, {"a_high", 3.2}},
                                       {{"rules", {{"turn", {{"Downturned", "Drop"}}}}}}};
  std::vector<lg::FaceMeshFrame> frames;
  for (int k = 0; k < 30; ++k) frames.push_back(face(2.6 + 0.03 * k, 16 * k, k));

  std::vector<std::vector<lg::GuidanceFrame>> serial(overrides.size());
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    const auto s = mgr.open_session(overrides[i]);
    for (const auto& f : frames) serial[i].push_back(s->submit_frame(f));
  }
  std::vector<std::vector<lg::GuidanceFrame>> parallel(overrides.size());
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    const auto s = mgr.open_session(overrides[i]);
    threads.emplace_back([&, s, i] {
      for (const auto& f : frames) parallel[i].push_back(s->submit_frame(f));
    });
  }
  for (auto& t : threads) t.join();
  CHECK(parallel == serial);
  // a = 2.9 is Average by default and Small under a_high = 2.8.
  CHECK(serial[0][10].analysis->features.left_labels.size == lg::SizeLabel::kAverage);
  CHECK(serial[1][10].analysis->features.left_labels.size == lg::SizeLabel::kSmall);
}
