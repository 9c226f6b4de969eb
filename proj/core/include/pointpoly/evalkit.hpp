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

#include <map>
#include <string>
#include <vector>

#include "pointpoly/geometry.hpp"

namespace pointpoly {

/// Precision, recall and their harmonic mean. A zero denominator yields 0 and
/// sets the matching `undefined` flag.
struct Prh {
  double precision = 0.0;
  double recall = 0.0;
  double hmean = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;

  static Prh from_counts(std::size_t matches, std::size_t predictions, std::size_t ground_truths);
};

struct MatchedPair {
  std::size_t image = 0;
  std::size_t pred = 0;
  std::size_t gt = 0;
  double score = 0.0;  // IoU, or distance for point matches
};

/// Outcome of one-to-one matching at a single threshold.
struct MatchEntry {
  Prh prh;
  std::size_t matches = 0;
  std::size_t counted_predictions = 0;
  std::size_t counted_ground_truths = 0;
  std::vector<MatchedPair> pairs;
};

struct EvalCounts {
  std::size_t num_pred = 0;
  std::size_t num_gt = 0;
  std::size_t num_dont_care_suppressed = 0;
};

struct EvalReport {
  std::string label;
  std::map<double, MatchEntry> per_threshold;
  std::map<double, MatchEntry> per_dist;
  EvalCounts counts;

  /// {"label", "thresholds": {"0.5": {"p","r","h",...}}, "dist": {...}, "counts": {...}}
  std::string to_json() const;
  /// Plain-text table, one row per IoU threshold then one per DIST radius.
  std::string to_table() const;
};

/// Predictions and ground truth of one image.
struct ImageDetections {
  std::vector<Polygon> predictions;
  std::vector<Polygon> ground_truths;  // care flag marks don't-care regions
};

struct ImagePoints {
  std::vector<Point2> predictions;
  std::vector<Point2> ground_truths;
};

inline constexpr double kDontCareIou = 0.5;

/// Greedy one-to-one matching of one image: pairs with IoU >= threshold are
/// taken in descending IoU order. Predictions whose best overlap is a
/// don't-care region at IoU >= 0.5 are dropped; don't-care regions are not
/// counted as ground truth.
MatchEntry match_polygons(const std::vector<Polygon>& preds, const std::vector<Polygon>& gts,
                          double iou_threshold, int resolution = kDefaultIouResolution);

/// Greedy one-to-one matching by ascending distance among pairs within `dist`
/// (inclusive).
MatchEntry match_points(const std::vector<Point2>& preds, const std::vector<Point2>& gts,
                        double dist);

/// Evaluates a corpus at every threshold; counts accumulate across images.
EvalReport sweep(const std::vector<ImageDetections>& images, const std::vector<double>& thresholds,
                 int resolution = kDefaultIouResolution);
EvalReport sweep(const std::vector<Polygon>& preds, const std::vector<Polygon>& gts,
                 const std::vector<double>& thresholds);

/// Adds DIST entries for each radius to an existing report.
void sweep_points(EvalReport& report, const std::vector<ImagePoints>& images,
                  const std::vector<double>& radii);

inline const std::vector<double> kStandardIouThresholds = {0.1, 0.3, 0.5, 0.7};
inline const std::vector<double> kStandardDistRadii = {5.0, 10.0, 20.0, 30.0};

/// Shortest decimal form, used for JSON keys ("0.5", "10").
std::string format_key(double v);

}  // namespace pointpoly
