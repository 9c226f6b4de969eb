// Copyright 2026 The pointpoly Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pointpoly/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pointpoly/annotation.hpp"
#include "pointpoly/errors.hpp"
#include "pointpoly/evalkit.hpp"
#include "pointpoly/pipeline.hpp"
#include "pointpoly/synthgen.hpp"

namespace pointpoly::cli {

namespace {

namespace fs = std::filesystem;

struct SynthFlags {
  std::size_t count = 0;
  std::string profile = "horizontal";
  std::uint64_t seed = 0;
  std::string out;
  double noise = 0.05;
  int width = 320;
  int height = 240;
};

// Knobs shared by generate and ablate.
struct PipelineFlags {
  std::string manifest;
  std::string out;
  std::string points_from = "centroid";
  std::string recognizer = "oracle";
  std::string atlas;
  std::string lattice;
  std::optional<double> tau;
  std::optional<int> refine_rounds;
  std::optional<double> refine_step;
  std::optional<double> smoothness;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> random_anchor_seed;
  bool no_agm = false;
  bool no_pgm = false;
  bool no_prm = false;
  std::string overlay_dir;
  bool no_raster = false;
  std::vector<double> iou = kStandardIouThresholds;
};

struct EvalFlags {
  std::string manifest;
  std::string pred;
  std::string out;
  std::vector<double> iou = kStandardIouThresholds;
  std::vector<double> dist;
};

void add_pipeline_options(CLI::App* cmd, PipelineFlags& f, bool stage_switches) {
  cmd->add_option("--manifest", f.manifest, "Ground-truth manifest (JSON)")->required();
  cmd->add_option("--points-from", f.points_from, "Where query points come from")
      ->check(CLI::IsMember({"manifest", "centroid"}));
  cmd->add_option("--recognizer", f.recognizer, "Recognizer backend")
      ->check(CLI::IsMember({"oracle", "template"}));
  cmd->add_option("--atlas", f.atlas, "Glyph atlas JSON for the template recognizer");
  cmd->add_option("--lattice", f.lattice, "Anchor lattice JSON");
  cmd->add_option("--tau", f.tau, "Attention threshold for trimming");
  cmd->add_option("--refine-rounds", f.refine_rounds, "Maximum coordinate-descent rounds");
  cmd->add_option("--refine-step", f.refine_step, "Initial refinement step (pixels)");
  cmd->add_option("--smoothness", f.smoothness, "Smoothness penalty weight");
  cmd->add_option("--seed", f.seed, "Seed for the refinement visiting order");
  cmd->add_option("--ablate-random-anchor", f.random_anchor_seed,
                  "Pick a random lattice anchor (seeded) instead of the most confident one");
  if (stage_switches) {
    cmd->add_flag("--no-agm", f.no_agm, "Disable anchor selection (fallback anchor)");
    cmd->add_flag("--no-pgm", f.no_pgm, "Disable boundary refinement");
    cmd->add_flag("--no-prm", f.no_prm, "Disable attention trimming");
    cmd->add_option("--overlay-dir", f.overlay_dir, "Write one SVG overlay per image here");
    cmd->add_flag("--no-raster", f.no_raster, "Omit the image from SVG overlays");
  }
  cmd->add_option("--iou", f.iou, "IoU thresholds (comma separated)")->delimiter(',');
}

PipelineConfig build_config(const PipelineFlags& f) {
  PipelineConfig cfg;
  cfg.enable_agm = !f.no_agm;
  cfg.enable_pgm = !f.no_pgm;
  cfg.enable_prm = !f.no_prm;
  if (!f.lattice.empty()) cfg.lattice = AnchorLattice::load(f.lattice);
  if (f.tau) cfg.prm.tau = *f.tau;
  if (f.refine_rounds) cfg.refine.max_rounds = *f.refine_rounds;
  if (f.refine_step) cfg.refine.initial_step = *f.refine_step;
  if (f.smoothness) cfg.refine.smoothness_weight = *f.smoothness;
  cfg.refine.rng_seed = f.seed;
  cfg.random_anchor_seed = f.random_anchor_seed;
  cfg.validate();
  return cfg;
}

RecognizerFactory build_factory(const PipelineFlags& f) {
  if (f.recognizer == "oracle") return oracle_factory();
  const GlyphAtlas atlas = f.atlas.empty() ? GlyphAtlas::builtin() : GlyphAtlas::load(f.atlas);
  return template_factory(std::make_shared<const TemplateRecognizer>(atlas));
}

CorpusRunOptions build_run_options(const PipelineFlags& f) {
  CorpusRunOptions opts;
  opts.points = f.points_from == "manifest" ? PointSource::Manifest : PointSource::Centroid;
  opts.thresholds = f.iou;
  return opts;
}

void validate_thresholds(const std::vector<double>& values) {
  for (double t : values) {
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("IoU thresholds must lie in (0, 1)");
  }
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

void emit_overlays(const Manifest& gt, const Manifest& predictions, const fs::path& image_root,
                   const fs::path& dir, bool embed_raster) {
  ensure_directory(dir);
  for (std::size_t r = 0; r < gt.size(); ++r) {
    const GrayImage base = read_image(image_root / gt[r].image_path);
    OverlayScene scene;
    scene.base = &base;
    scene.embed_raster = embed_raster;
    for (const AnnotationInstance& inst : gt[r].instances) {
      if (!inst.polygon) continue;
      scene.layers.push_back(
          {*inst.polygon, inst.care ? "green" : "blue", inst.text.value_or(""), true});
    }
    for (const AnnotationInstance& inst : predictions[r].instances) {
      if (inst.polygon) scene.layers.push_back({*inst.polygon, "red", inst.text.value_or(""), false});
    }
    emit_overlay_svg(scene, dir / fs::path(gt[r].image_path).filename().replace_extension(".svg"));
  }
}

int cmd_synth(const SynthFlags& f, std::ostream& out) {
  CorpusOptions opts;
  opts.width = f.width;
  opts.height = f.height;
  opts.noise_sigma = f.noise;
  const auto scenes = make_corpus(f.count, parse_profile(f.profile), f.seed, opts);
  write_corpus(scenes, f.out);
  std::size_t instances = 0;
  for (const auto& s : scenes) instances += s.record.instances.size();
  out << "wrote " << scenes.size() << " images (" << instances << " instances) to " << f.out
      << "\n";
  return kExitOk;
}

int cmd_generate(const PipelineFlags& f, std::ostream& out) {
  validate_thresholds(f.iou);
  const PipelineConfig cfg = build_config(f);
  const fs::path manifest_path(f.manifest);
  const Manifest gt = load_manifest(manifest_path);
  const fs::path root = manifest_path.parent_path();
  const CorpusRun run = run_corpus(gt, root, build_factory(f), cfg, build_run_options(f));

  ensure_directory(f.out);
  save_manifest(run.predictions, fs::path(f.out) / "predictions.json");
  if (!f.overlay_dir.empty()) emit_overlays(gt, run.predictions, root, f.overlay_dir, !f.no_raster);

  std::size_t count = 0;
  for (const auto& rec : run.predictions) count += rec.instances.size();
  out << cfg.stage_label() << ": " << count << " predictions written to "
      << (fs::path(f.out) / "predictions.json").string() << "\n";
  return kExitOk;
}

int cmd_eval(const EvalFlags& f, std::ostream& out) {
  validate_thresholds(f.iou);
  for (double d : f.dist) {
    if (!(d >= 0.0)) throw ConfigError("DIST radii must be >= 0");
  }
  const Manifest gt = load_manifest(f.manifest);
  const Manifest pred = load_manifest(f.pred);
  EvalReport report = evaluate_manifests(pred, gt, f.iou, f.dist);
  report.label = fs::path(f.pred).filename().string();
  out << report.to_table();
  const fs::path report_path =
      f.out.empty() ? fs::path(f.pred).parent_path() / "report.json" : fs::path(f.out);
  write_text(report_path, report.to_json() + "\n");
  return kExitOk;
}

int cmd_ablate(const PipelineFlags& f, std::ostream& out) {
  validate_thresholds(f.iou);
  const fs::path manifest_path(f.manifest);
  const Manifest gt = load_manifest(manifest_path);
  const fs::path root = manifest_path.parent_path();
  const RecognizerFactory factory = build_factory(f);
  const CorpusRunOptions opts = build_run_options(f);

  struct Row {
    const char* name;
    bool agm, pgm, prm;
  };
  const Row rows[] = {{"full", true, true, true},
                      {"-AGM", false, true, true},
                      {"-PGM", true, false, true},
                      {"-PRM", true, true, false}};
  const double key = std::find(f.iou.begin(), f.iou.end(), 0.5) != f.iou.end() ? 0.5 : f.iou.front();

  std::ostringstream table;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %-14s %7s %7s %7s   (IoU %s)\n", "row", "stages", "P", "R",
                "H", format_key(key).c_str());
  table << line;
  nlohmann::json doc = nlohmann::json::array();
  for (const Row& row : rows) {
    PipelineFlags rf = f;
    rf.no_agm = !row.agm;
    rf.no_pgm = !row.pgm;
    rf.no_prm = !row.prm;
    const PipelineConfig cfg = build_config(rf);
    const CorpusRun run = run_corpus(gt, root, factory, cfg, opts);
    const Prh& prh = run.report.per_threshold.at(key).prh;
    std::snprintf(line, sizeof line, "%-8s %-14s %7.1f %7.1f %7.1f\n", row.name,
                  cfg.stage_label().c_str(), 100.0 * prh.precision, 100.0 * prh.recall,
                  100.0 * prh.hmean);
    table << line;
    nlohmann::json entry = nlohmann::json::parse(run.report.to_json());
    entry["row"] = row.name;
    doc.push_back(std::move(entry));
  }
  out << table.str();
  if (!f.out.empty()) {
    ensure_directory(f.out);
    write_text(fs::path(f.out) / "ablation.json", doc.dump(1) + "\n");
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polygon pseudo-labels for scene text from single points"};
  app.name("pointpoly");
  app.require_subcommand(1);

  SynthFlags synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Render a synthetic corpus");
  synth_cmd->add_option("--count", synth.count, "Number of scenes")
      ->required()
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--profile", synth.profile, "horizontal, mixed or curved")
      ->check(CLI::IsMember({"horizontal", "mixed", "curved"}));
  synth_cmd->add_option("--seed", synth.seed, "Corpus seed");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--noise", synth.noise, "Gaussian noise sigma")->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--width", synth.width, "Canvas width")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--height", synth.height, "Canvas height")->check(CLI::PositiveNumber);

  PipelineFlags generate;
  CLI::App* generate_cmd = app.add_subcommand("generate", "Produce polygons from points");
  add_pipeline_options(generate_cmd, generate, true);
  generate_cmd->add_option("--out", generate.out, "Output directory")->required();

  EvalFlags eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score predictions against ground truth");
  eval_cmd->add_option("--manifest", eval.manifest, "Ground-truth manifest")->required();
  eval_cmd->add_option("--pred", eval.pred, "Prediction manifest")->required();
  eval_cmd->add_option("--out", eval.out, "JSON report path (default: report.json next to --pred)");
  eval_cmd->add_option("--iou", eval.iou, "IoU thresholds (comma separated)")->delimiter(',');
  eval_cmd->add_option("--dist", eval.dist, "Point radii in pixels (comma separated)")
      ->delimiter(',');

  PipelineFlags ablate;
  CLI::App* ablate_cmd = app.add_subcommand("ablate", "Run the four stage-removal rows");
  add_pipeline_options(ablate_cmd, ablate, false);
  ablate_cmd->add_option("--out", ablate.out, "Directory for ablation.json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*synth_cmd) return cmd_synth(synth, out);
    if (*generate_cmd) return cmd_generate(generate, out);
    if (*eval_cmd) return cmd_eval(eval, out);
    if (*ablate_cmd) return cmd_ablate(ablate, out);
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace pointpoly::cli
