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

#include "pointpoly/pipeline.hpp"

#include <map>
#include <random>
#include <set>

#include "pointpoly/errors.hpp"

namespace pointpoly {

void PipelineConfig::validate() const {
  if (!enable_agm && !enable_pgm && !enable_prm) {
    throw ConfigError("at least one pipeline stage must be enabled");
  }
  lattice.validate();
  refine.validate();
  prm.validate();
  if (!(fallback_anchor.width_fraction > 0.0 && fallback_anchor.width_fraction <= 1.0 &&
        fallback_anchor.height_fraction > 0.0 && fallback_anchor.height_fraction <= 1.0)) {
    throw ConfigError("fallback anchor fractions must lie in (0, 1]");
  }
}

std::string PipelineConfig::stage_label() const {
  std::string label;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!label.empty()) label += "+";
    label += name;
  };
  add(enable_agm, "AGM");
  add(enable_pgm, "PGM");
  add(enable_prm, "PRM");
  return label.empty() ? "none" : label;
}

Polygon PipelineTrace::polygon() const {
  if (auto p = final_boundary.try_polygon()) return *p;
  return rect_to_polygon(anchor_rect);
}

PipelineTrace run_instance(const GrayImage& img, Point2 point, const Recognizer& recognizer,
                           const PipelineConfig& cfg, std::uint64_t instance_key) {
  cfg.validate();
  PipelineTrace trace;

  if (cfg.enable_agm) {
    const std::vector<Rect> anchors = generate_anchors(point, img, cfg.lattice);
    if (cfg.random_anchor_seed) {
      std::mt19937_64 rng(*cfg.random_anchor_seed ^ instance_key);
      const std::size_t pick = static_cast<std::size_t>(rng() % anchors.size());
      ScoredAnchor chosen{anchors[pick],
                          recognizer.recognize(place_axis_aligned(img, anchors[pick])), 0.0, pick};
      chosen.score = aggregate_confidence(chosen.recognition);
      trace.anchor = std::move(chosen);
    } else {
      trace.anchor = select_anchor(anchors, img, recognizer);
    }
    trace.anchor_rect = trace.anchor->rect;
    trace.scores.anchor = trace.anchor->score;
  } else {
    AnchorLattice single;
    single.normal.push_back(cfg.fallback_anchor);
    trace.anchor_rect = generate_anchors(point, img, single).at(0);
  }

  trace.initial = sample_boundary(trace.anchor_rect);
  BoundaryPolygon current = trace.initial;
  if (cfg.enable_pgm) {
    RefineResult r = refine_boundary(img, current, recognizer, cfg.refine);
    current = r.boundary;
    trace.scores.refined = rectified_score(img, current, recognizer, cfg.refine.regularization);
    trace.refinement = std::move(r);
  }
  if (cfg.enable_prm) {
    TrimResult t = trim_boundary_detailed(current, img, recognizer, cfg.prm);
    current = t.boundary;
    trace.scores.trimmed = rectified_score(img, current, recognizer, cfg.prm.regularization);
    trace.trim = std::move(t);
  }
  trace.final_boundary = current;
  return trace;
}

RecognizerFactory oracle_factory() {
  return [](const AnnotationRecord& record) -> std::unique_ptr<Recognizer> {
    auto oracle = std::make_unique<OracleRecognizer>();
    for (const AnnotationInstance& inst : record.instances) {
      if (inst.polygon && inst.text) oracle->register_instance(*inst.polygon, *inst.text);
    }
    return oracle;
  };
}

RecognizerFactory template_factory(std::shared_ptr<const TemplateRecognizer> recognizer) {
  // Non-owning view of the shared recognizer so every record reuses it.
  struct View final : Recognizer {
    std::shared_ptr<const TemplateRecognizer> inner;
    RecognitionResult recognize(const PlacedCrop& crop) const override {
      return inner->recognize(crop);
    }
  };
  return [recognizer](const AnnotationRecord&) -> std::unique_ptr<Recognizer> {
    auto view = std::make_unique<View>();
    view->inner = recognizer;
    return view;
  };
}

namespace {

std::optional<Point2> instance_point(const AnnotationInstance& inst) {
  if (inst.point) return inst.point;
  if (inst.polygon) return centroid(*inst.polygon);
  return std::nullopt;
}

}  // namespace

EvalReport evaluate_manifests(const Manifest& predictions, const Manifest& ground_truth,
                              const std::vector<double>& thresholds,
                              const std::vector<double>& dist_radii) {
  std::map<std::string, const AnnotationRecord*> by_path;
  for (const AnnotationRecord& rec : predictions) {
    if (!by_path.emplace(rec.image_path, &rec).second) {
      throw SchemaError("predictions list image twice: " + rec.image_path);
    }
  }
  std::set<std::string> matched;
  std::vector<ImageDetections> detections;
  std::vector<ImagePoints> points;
  const AnnotationRecord empty;
  for (std::size_t i = 0; i < ground_truth.size(); ++i) {
    const auto it = by_path.find(ground_truth[i].image_path);
    const AnnotationRecord& pred = it == by_path.end() ? empty : *it->second;
    if (it != by_path.end()) matched.insert(it->first);
    ImageDetections det;
    ImagePoints pts;
    for (const AnnotationInstance& inst : pred.instances) {
      if (inst.polygon) det.predictions.push_back(*inst.polygon);
      if (auto p = instance_point(inst)) pts.predictions.push_back(*p);
    }
    for (const AnnotationInstance& inst : ground_truth[i].instances) {
      if (inst.polygon) {
        Polygon gt = *inst.polygon;
        gt.set_care(inst.care);
        det.ground_truths.push_back(std::move(gt));
      }
      if (!inst.care) continue;
      if (auto p = instance_point(inst)) pts.ground_truths.push_back(*p);
    }
    detections.push_back(std::move(det));
    points.push_back(std::move(pts));
  }
  if (matched.size() != by_path.size()) throw SchemaError("predictions name images absent from the ground truth");
  EvalReport report = sweep(detections, thresholds);
  if (!dist_radii.empty()) sweep_points(report, points, dist_radii);
  return report;
}

namespace {

CorpusRun run_with_loader(const Manifest& ground_truth,
                          const std::function<GrayImage(std::size_t)>& load,
                          const RecognizerFactory& factory, const PipelineConfig& cfg,
                          const CorpusRunOptions& options) {
  cfg.validate();
  CorpusRun run;
  for (std::size_t r = 0; r < ground_truth.size(); ++r) {
    const AnnotationRecord& record = ground_truth[r];
    const GrayImage img = load(r);
    const std::unique_ptr<Recognizer> recognizer = factory(record);
    AnnotationRecord predicted{record.image_path, {}};
    std::vector<PipelineTrace> traces;
    for (std::size_t i = 0; i < record.instances.size(); ++i) {
      const AnnotationInstance& inst = record.instances[i];
      if (!inst.care) continue;
      std::optional<Point2> point;
      if (options.points == PointSource::Manifest) {
        if (!inst.point) throw SchemaError(record.image_path + ": instance without a point");
        point = inst.point;
      } else if (inst.polygon) {
        point = centroid(*inst.polygon);
      } else {
        point = inst.point;
      }
      if (!point) continue;
      PipelineTrace trace =
          run_instance(img, *point, *recognizer, cfg, (static_cast<std::uint64_t>(r) << 20) ^ i);
      AnnotationInstance out;
      out.polygon = trace.polygon();
      out.point = *point;
      out.text = inst.text;
      predicted.instances.push_back(std::move(out));
      traces.push_back(std::move(trace));
    }
    run.predictions.push_back(std::move(predicted));
    run.traces.push_back(std::move(traces));
  }
  run.report = evaluate_manifests(run.predictions, ground_truth, options.thresholds,
                                  options.dist_radii);
  run.report.label = cfg.stage_label();
  return run;
}

}  // namespace

CorpusRun run_corpus(const Manifest& ground_truth, const std::vector<GrayImage>& images,
                     const RecognizerFactory& factory, const PipelineConfig& cfg,
                     const CorpusRunOptions& options) {
  if (images.size() != ground_truth.size()) {
    throw std::invalid_argument("run_corpus: one image per record required");
  }
  return run_with_loader(
      ground_truth, [&](std::size_t i) { return images[i]; }, factory, cfg, options);
}

CorpusRun run_corpus(const Manifest& ground_truth, const std::filesystem::path& image_root,
                     const RecognizerFactory& factory, const PipelineConfig& cfg,
                     const CorpusRunOptions& options) {
  return run_with_loader(
      ground_truth,
      [&](std::size_t i) { return read_image(image_root / ground_truth[i].image_path); }, factory,
      cfg, options);
}

}  // namespace pointpoly
