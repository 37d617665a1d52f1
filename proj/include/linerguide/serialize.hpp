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

#ifndef LINERGUIDE_SERIALIZE_HPP_
#define LINERGUIDE_SERIALIZE_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "linerguide/engine.hpp"

namespace linerguide {

// Landmark fixture file:
//   {"image": {"w": int, "h": int},
//    "frames": [{"t": int, "landmarks": [[x, y], ...]}, ...]}
// with normalized coordinates.
struct Fixture {
  int width = 0;
  int height = 0;
  std::vector<FaceMeshFrame> frames;
};

// Throws Error(kSchemaError). Syntax errors name the byte offset, schema
// errors name the offending field.
// One {"t", "landmarks"} object. `path` prefixes SchemaError messages.
FaceMeshFrame frame_from_json(const nlohmann::json& f, int width, int height,
                              const std::string& path = "frame");
Fixture parse_fixture(std::string_view text);
Fixture load_fixture(const std::filesystem::path& path);
nlohmann::json fixture_to_json(const Fixture& fixture);

// Classification report: per eye {width, height, aspect_ratio, alpha_deg,
// beta_deg, size, turn}, plus "shared" {d_e, d_avg, spacing}.
nlohmann::json analysis_report(const FaceAnalysis& analysis);
nlohmann::json recommendation_to_json(const Recommendation& rec);
nlohmann::json eye_guidance_to_json(const EyeGuidance& eye);
// {"left": {...}, "right": {...}}, each with "style" and "polygons".
nlohmann::json guidance_document(const GuidanceFrame& frame);
// Server -> client {"type": "guidance", ...} message.
nlohmann::json guidance_message(const GuidanceFrame& frame);

// Fixed-point decimal with `digits` fractional digits; never prints "-0".
std::string format_fixed(double v, int digits = 3);

// One orange path per polygon, viewBox equal to the image size. Output is
// byte-stable for identical inputs.
std::string render_svg(int width, int height, const std::vector<GuidancePolygon>& polygons);

}  // namespace linerguide

#endif  // LINERGUIDE_SERIALIZE_HPP_
