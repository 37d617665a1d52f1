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


#include "linerguide/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "linerguide/config.hpp"
#include "linerguide/engine.hpp"
#include "linerguide/error.hpp"
#include "linerguide/serialize.hpp"
#include "linerguide/server.hpp"

namespace linerguide {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CommonOptions {
  std::string config;
  std::string rules;
};

// Exit with a code after printing to stderr.
struct Failure {
  int code;
  std::string message;
};

int exit_code_for(ErrorCode code) {
  return is_detection_failure(code) ? kExitDetection : kExitValidation;
}

// Environment directory first, then --config (directory or overrides file),
// then --rules.
EngineConfig resolve_config(const CommonOptions& opts) {
  EngineConfig cfg = default_engine_config();
  if (const char* env = std::getenv(kConfigDirEnv); env != nullptr && *env != '\0') {
    cfg = load_config_dir(env);
  }
  if (!opts.config.empty()) {
    if (fs::is_directory(opts.config)) {
      cfg = load_config_dir(opts.config);
    } else {
      cfg = apply_overrides(cfg, read_json_file(opts.config));
    }
  }
  if (!opts.rules.empty()) cfg.rules = load_rules(read_json_file(opts.rules));
  cfg.validate();
  return cfg;
}

const FaceMeshFrame& pick_frame(const Fixture& fx, int index) {
  if (fx.frames.empty()) throw Failure{kExitValidation, "fixture has no frames"};
  if (index < 0 || static_cast<std::size_t>(index) >= fx.frames.size()) {
    throw Failure{kExitValidation, "frame index " + std::to_string(index) + " out of range (" +
                                       std::to_string(fx.frames.size()) + " frames)"};
  }
  return fx.frames[static_cast<std::size_t>(index)];
}

json recommendations_json(const ShapeAnalysis& a) {
  return {{"left", recommendation_to_json(a.left)}, {"right", recommendation_to_json(a.right)}};
}

void print_table(std::ostream& out, const std::string& fixture, int frame,
                 const ShapeAnalysis& a) {
  const FaceAnalysis& f = a.features;
  out << "fixture " << fixture << " frame " << frame << "\n\n";
  out << std::left << std::setw(7) << "eye" << std::setw(9) << "width" << std::setw(9)
      << "height" << std::setw(8) << "a" << std::setw(9) << "alpha" << std::setw(9) << "beta"
      << std::setw(9) << "size"
      << "turn\n";
  auto row = [&](const char* name, const EyeFeatures& e, const EyeShapeLabels& l) {
    out << std::setw(7) << name << std::setw(9) << format_fixed(e.width) << std::setw(9)
        << format_fixed(e.height) << std::setw(8) << format_fixed(e.aspect_ratio)
        << std::setw(9) << format_fixed(e.alpha_deg) << std::setw(9) << format_fixed(e.beta_deg)
        << std::setw(9) << label_name(l.size) << label_name(l.turn) << "\n";
  };
  row("left", f.left, f.left_labels);
  row("right", f.right, f.right_labels);
  out << "\nspacing D_e=" << format_fixed(f.spacing.d_e)
      << " D_avg=" << format_fixed(f.spacing.d_avg)
      << " ratio=" << format_fixed(f.spacing.ratio()) << " " << label_name(f.left_labels.spacing)
      << "\n\n";
  auto rec = [&](const char* name, const Recommendation& r) {
    GuidancePolygon tag;
    tag.styles = r.styles();
    out << std::setw(7) << name << tag.style_label() << ", " << thickness_class_name(r.thickness)
        << " thickness\n";
    for (const RationaleEntry& e : r.rationale) out << "         " << e.rule << "\n";
  };
  rec("left", a.left);
  rec("right", a.right);
}

int cmd_analyze(const CommonOptions& common, const std::string& fixture_path, int frame_index,
                bool as_json, std::ostream& out) {
  const EngineConfig cfg = resolve_config(common);
  const Fixture fx = load_fixture(fixture_path);
  const GuidanceFrame g = process_frame(pick_frame(fx, frame_index), cfg);
  if (!g.status.detection_ok) {
    throw Failure{kExitDetection, g.status.error_code + ": " + g.status.message};
  }
  const ShapeAnalysis& a = *g.analysis;
  if (as_json) {
    const json report = {{"fixture", fixture_path},
                         {"frame", frame_index},
                         {"t", g.t},
                         {"analysis", analysis_report(a.features)},
                         {"recommendation", recommendations_json(a)}};
    out << report.dump(2) << "\n";
  } else {
    print_table(out, fixture_path, frame_index, a);
  }
  return kExitOk;
}

int cmd_render(const CommonOptions& common, const std::string& fixture_path,
               const std::string& out_path, const std::vector<std::string>& style_args,
               int frame_index, bool as_json, std::ostream& out) {
  std::vector<StyleId> styles;
  for (const std::string& s : style_args) {
    const auto id = parse_style(s);
    if (!id) throw Failure{kExitValidation, "unknown style \"" + s + "\""};
    styles.push_back(*id);
  }
  const EngineConfig cfg = resolve_config(common);
  const Fixture fx = load_fixture(fixture_path);
  const FaceMeshFrame& frame = pick_frame(fx, frame_index);

  GuidanceFrame g = process_frame(frame, cfg);
  if (g.status.detection_ok && !styles.empty()) {
    ShapeAnalysis forced = *g.analysis;
    forced.left = override_styles(forced.left, styles);
    forced.right = override_styles(forced.right, styles);
    g = process_frame(frame, cfg, &forced);
  }
  if (!g.status.detection_ok || !g.status.geometry_ok) {
    throw Failure{kExitDetection, g.status.error_code + ": " + g.status.message};
  }

  std::vector<GuidancePolygon> polygons = g.left.polygons;
  polygons.insert(polygons.end(), g.right.polygons.begin(), g.right.polygons.end());
  const std::string svg = render_svg(fx.width, fx.height, polygons);
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << svg) || !file.flush()) {
    throw Failure{kExitUnwritable, "cannot write " + out_path};
  }

  if (as_json) {
    const json report = {{"fixture", fixture_path},
                         {"frame", frame_index},
                         {"out", out_path},
                         {"polygons", polygons.size()},
                         {"fallback_used", g.status.fallback_used},
                         {"guidance", guidance_document(g)}};
    out << report.dump(2) << "\n";
  } else {
    out << "wrote " << out_path << " (" << polygons.size() << " polygons)\n";
  }
  return kExitOk;
}

int cmd_serve(const CommonOptions& common, const std::string& host, int port,
              const std::string& static_dir, std::ostream& out) {
  ServerOptions opts;
  opts.config = resolve_config(common);
  opts.address = host;
  opts.port = static_cast<unsigned short>(port);
  if (!static_dir.empty()) opts.static_dir = static_dir;
  std::optional<Server> server;
  try {
    server.emplace(std::move(opts));
  } catch (const BindError& e) {
    throw Failure{kExitBind, e.what()};
  }
  out << "listening on http://" << host << ":" << server->port() << std::endl;
  server->run(true);
  out << "shutdown complete" << std::endl;
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eye-shape analysis and eyeliner guidance rendering", "linerguide"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config,
                    "Config directory, or a JSON file of overrides");
    sub->add_option("--rules", common.rules, "Recommendation rules JSON");
  };

  std::string fixture;
  int frame_index = 0;
  bool as_json = false;

  CLI::App* analyze = app.add_subcommand("analyze", "Classify both eyes of a fixture frame");
  analyze->add_option("fixture", fixture, "Landmark fixture JSON")->required();
  analyze->add_option("--frame", frame_index, "Frame index")->capture_default_str();
  analyze->add_flag("--json", as_json, "Print JSON instead of a table");
  add_common(analyze);

  std::string out_path;
  std::vector<std::string> styles;
  CLI::App* render = app.add_subcommand("render", "Render guidance polygons to SVG");
  render->add_option("fixture", fixture, "Landmark fixture JSON")->required();
  render->add_option("--out", out_path, "Output SVG path")->required();
  render->add_option("--style", styles, "Style override, repeatable");
  render->add_option("--frame", frame_index, "Frame index")->capture_default_str();
  render->add_flag("--json", as_json, "Print a JSON report");
  add_common(render);

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  CLI::App* serve = app.add_subcommand("serve", "Run the streaming guidance service");
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535))->capture_default_str();
  serve->add_option("--host", host, "Listen address")->capture_default_str();
  serve->add_option("--static", static_dir, "Directory of static web assets");
  add_common(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    if (*analyze) return cmd_analyze(common, fixture, frame_index, as_json, out);
    if (*render) return cmd_render(common, fixture, out_path, styles, frame_index, as_json, out);
    return cmd_serve(common, host, port, static_dir, out);
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace linerguide
