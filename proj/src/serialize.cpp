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

#include "linerguide/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "linerguide/error.hpp"

namespace linerguide {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::kSchemaError, what);
}

int positive_int(const json& parent, const char* key, const std::string& path) {
  if (!parent.contains(key) || !parent.at(key).is_number_integer()) {
    schema_error(path + "." + key + " must be an integer");
  }
  const int v = parent.at(key).get<int>();
  if (v <= 0) schema_error(path + "." + key + " must be positive");
  return v;
}

json points_to_json(const std::vector<Vec2>& pts) {
  json arr = json::array();
  for (const Vec2& p : pts) arr.push_back({p.x, p.y});
  return arr;
}

json styles_to_json(const std::vector<StyleId>& styles) {
  json arr = json::array();
  for (StyleId s : styles) arr.push_back(style_name(s));
  return arr;
}

json eye_report(const EyeFeatures& f, const EyeShapeLabels& l) {
  return {{"width", f.width},
          {"height", f.height},
          {"aspect_ratio", f.aspect_ratio},
          {"alpha_deg", f.alpha_deg},
          {"beta_deg", f.beta_deg},
          {"size", label_name(l.size)},
          {"turn", label_name(l.turn)}};
}

}  // namespace

FaceMeshFrame frame_from_json(const json& f, int width, int height, const std::string& path) {
  if (!f.is_object()) schema_error(path + " must be an object");
  FaceMeshFrame frame;
  frame.width = width;
  frame.height = height;
  if (!f.contains("t") || !f.at("t").is_number_integer()) {
    schema_error(path + ".t must be an integer");
  }
  frame.timestamp_ms = f.at("t").get<std::int64_t>();
  if (!f.contains("landmarks") || !f.at("landmarks").is_array()) {
    schema_error(path + ".landmarks must be an array");
  }
  const json& lms = f.at("landmarks");
  frame.landmarks.reserve(lms.size());
  for (std::size_t k = 0; k < lms.size(); ++k) {
    const json& p = lms[k];
    if (!p.is_array() || p.size() < 2 || !p[0].is_number() || !p[1].is_number()) {
      schema_error(path + ".landmarks[" + std::to_string(k) + "] must be [x, y]");
    }
    frame.landmarks.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  if (frame.landmarks.size() < kMinLandmarkCount) {
    schema_error(path + " has " + std::to_string(frame.landmarks.size()) +
                 " landmarks, at least 468 required");
  }
  return frame;
}

Fixture parse_fixture(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema_error("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) schema_error("top level must be an object");
  if (!doc.contains("image") || !doc.at("image").is_object()) {
    schema_error("missing \"image\" object");
  }
  Fixture fx;
  fx.width = positive_int(doc.at("image"), "w", "image");
  fx.height = positive_int(doc.at("image"), "h", "image");
  if (!doc.contains("frames") || !doc.at("frames").is_array()) {
    schema_error("missing \"frames\" array");
  }
  const json& frames = doc.at("frames");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    fx.frames.push_back(
        frame_from_json(frames[i], fx.width, fx.height, "frames[" + std::to_string(i) + "]"));
  }
  return fx;
}

Fixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kSchemaError, "cannot read fixture " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fixture(buf.str());
}

json fixture_to_json(const Fixture& fixture) {
  json frames = json::array();
  for (const FaceMeshFrame& f : fixture.frames) {
    frames.push_back({{"t", f.timestamp_ms}, {"landmarks", points_to_json(f.landmarks)}});
  }
  return {{"image", {{"w", fixture.width}, {"h", fixture.height}}}, {"frames", frames}};
}

json analysis_report(const FaceAnalysis& a) {
  return {{"left", eye_report(a.left, a.left_labels)},
          {"right", eye_report(a.right, a.right_labels)},
          {"shared",
           {{"d_e", a.spacing.d_e},
            {"d_avg", a.spacing.d_avg},
            {"spacing", label_name(a.left_labels.spacing)}}}};
}

json recommendation_to_json(const Recommendation& rec) {
  json rationale = json::array();
  for (const RationaleEntry& r : rec.rationale) {
    rationale.push_back({{"label", r.label}, {"rule", r.rule}});
  }
  return {{"upper", style_name(rec.upper)},
          {"wing", rec.wing ? json(style_name(*rec.wing)) : json(nullptr)},
          {"lower", rec.lower ? json(style_name(*rec.lower)) : json(nullptr)},
          {"thickness", thickness_class_name(rec.thickness)},
          {"style", styles_to_json(rec.styles())},
          {"rationale", rationale}};
}

json eye_guidance_to_json(const EyeGuidance& eye) {
  json polys = json::array();
  for (const GuidancePolygon& p : eye.polygons) {
    polys.push_back({{"style", p.style_label()}, {"vertices", points_to_json(p.vertices)}});
  }
  return {{"style", styles_to_json(eye.styles)},
          {"thickness",
           {{"h", eye.thickness.h},
            {"h_lower_outer", eye.thickness.h_lower_outer},
            {"h_lower_inner", eye.thickness.h_lower_inner}}},
          {"polygons", polys},
          {"contour", points_to_json({eye.contour.begin(), eye.contour.end()})},
          {"fallback_used", eye.fallback_used}};
}

json guidance_document(const GuidanceFrame& frame) {
  return {{"left", eye_guidance_to_json(frame.left)},
          {"right", eye_guidance_to_json(frame.right)}};
}

json guidance_message(const GuidanceFrame& frame) {
  const bool has_polygons = frame.status.detection_ok && frame.status.geometry_ok;
  json msg = {{"type", "guidance"},
              {"t", frame.t},
              {"detection_ok", frame.status.detection_ok},
              {"geometry_ok", frame.status.geometry_ok},
              {"fallback_used", frame.status.fallback_used},
              {"frozen", frame.frozen},
              {"eyes", has_polygons ? guidance_document(frame) : json(nullptr)}};
  if (!frame.status.error_code.empty()) {
    msg["error"] = {{"code", frame.status.error_code}, {"message", frame.status.message}};
  }
  if (frame.analysis) {
    const FaceAnalysis& f = frame.analysis->features;
    msg["labels"] = {
        {"left", {{"size", label_name(f.left_labels.size)}, {"turn", label_name(f.left_labels.turn)}}},
        {"right",
         {{"size", label_name(f.right_labels.size)}, {"turn", label_name(f.right_labels.turn)}}},
        {"spacing", label_name(f.left_labels.spacing)}};
    msg["recommendation"] = {{"left", recommendation_to_json(frame.analysis->left)},
                             {"right", recommendation_to_json(frame.analysis->right)}};
    json rationale = json::object();
    for (const auto& [side, rec] :
         {std::pair{"left", &frame.analysis->left}, std::pair{"right", &frame.analysis->right}}) {
      json lines = json::array();
      for (const RationaleEntry& r : rec->rationale) lines.push_back(r.label + ": " + r.rule);
      rationale[side] = lines;
    }
    msg["rationale"] = rationale;
  } else {
    msg["labels"] = nullptr;
    msg["recommendation"] = nullptr;
    msg["rationale"] = nullptr;
  }
  return msg;
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, digits);
  std::string s = ec == std::errc{} ? std::string(buf, end) : std::string("nan");
  if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

std::string render_svg(int width, int height, const std::vector<GuidancePolygon>& polygons) {
  std::string out;
  const std::string w = std::to_string(width);
  const std::string h = std::to_string(height);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + h +
         "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  for (const GuidancePolygon& p : polygons) {
    out += "  <path data-eye=\"" + std::string(eye_side_name(p.side)) + "\" data-style=\"" +
           p.style_label() + "\" fill=\"#FFA500\" fill-opacity=\"0.6\" d=\"";
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
      out += i == 0 ? "M" : " L";
      out += format_fixed(p.vertices[i].x) + "," + format_fixed(p.vertices[i].y);
    }
    out += " Z\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace linerguide
