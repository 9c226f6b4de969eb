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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pointpoly/agm.hpp"
#include "pointpoly/annotation.hpp"
#include "pointpoly/evalkit.hpp"
#include "pointpoly/pgm.hpp"
#include "pointpoly/prm.hpp"
#include "pointpoly/raster.hpp"
#include "pointpoly/recognizer.hpp"

namespace pointpoly {

struct PipelineConfig {
  bool enable_agm = true;
  bool enable_pgm = true;
  bool enable_prm = true;
  AnchorLattice lattice = default_lattice();
  RefineConfig refine;
  PrmConfig prm;
  /// Anchor used when anchor selection is disabled.
  AnchorSize fallback_anchor{0.2, 0.2};
  /// When set, anchor selection picks a lattice entry at random instead of by score.
  std::optional<std::uint64_t> random_anchor_seed;

  /// Throws ConfigError when every stage is disabled or a sub-config is invalid.
  void validate() const;
  /// "AGM+PGM+PRM", "AGM+PRM", ...
  std::string stage_label() const;
};

struct StageScores {
  std::optional<double> anchor;
  std::optional<double> refined;
  std::optional<double> trimmed;
};

struct PipelineTrace {
  /// The selected lattice anchor; absent when anchor selection is disabled.
  std::optional<ScoredAnchor> anchor;
  /// The rectangle the boundary starts from (selected or fallback anchor).
  Rect anchor_rect;
  BoundaryPolygon initial;
  std::optional<RefineResult> refinement;
  std::optional<TrimResult> trim;
  BoundaryPolygon final_boundary;
  StageScores scores;

  /// The final boundary as a polygon, or the anchor rectangle if it degenerated.
  Polygon polygon() const;
};

/// Runs the enabled stages for one point. `instance_key` decorrelates the
/// random-anchor draw between instances.
PipelineTrace run_instance(const GrayImage& img, Point2 point, const Recognizer& recognizer,
                           const PipelineConfig& cfg, std::uint64_t instance_key = 0);

enum class PointSource { Centroid, Manifest };

/// Builds the recognizer used for one annotation record.
using RecognizerFactory = std::function<std::unique_ptr<Recognizer>(const AnnotationRecord&)>;

/// Oracle recognizer registered with every polygon-and-text instance of the record.
RecognizerFactory oracle_factory();
/// One shared template recognizer for every record.
RecognizerFactory template_factory(std::shared_ptr<const TemplateRecognizer> recognizer);

struct CorpusRunOptions {
  PointSource points = PointSource::Centroid;
  std::vector<double> thresholds = kStandardIouThresholds;
  std::vector<double> dist_radii = kStandardDistRadii;
};

struct CorpusRun {
  Manifest predictions;
  std::vector<std::vector<PipelineTrace>> traces;
  EvalReport report;
};

/// Runs every care instance of every record and evaluates the predictions
/// against the polygons. `images[i]` belongs to `ground_truth[i]`.
CorpusRun run_corpus(const Manifest& ground_truth, const std::vector<GrayImage>& images,
                     const RecognizerFactory& factory, const PipelineConfig& cfg,
                     const CorpusRunOptions& options = {});

/// Loads each record's image relative to `image_root`.
CorpusRun run_corpus(const Manifest& ground_truth, const std::filesystem::path& image_root,
                     const RecognizerFactory& factory, const PipelineConfig& cfg,
                     const CorpusRunOptions& options = {});

/// Polygon report of a prediction manifest against ground truth, records
/// paired by image_path (a ground-truth image without a prediction record has
/// no detections). DIST entries compare prediction points with care instance
/// points (polygon centroid when absent). SchemaError for predictions on
/// unknown or repeated images.
EvalReport evaluate_manifests(const Manifest& predictions, const Manifest& ground_truth,
                              const std::vector<double>& thresholds = kStandardIouThresholds,
                              const std::vector<double>& dist_radii = kStandardDistRadii);

}  // namespace pointpoly
