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

#include "pointpoly/evalkit.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pointpoly {

namespace {

struct Candidate {
  std::size_t pred;
  std::size_t gt;
  double score;
};

// Greedy assignment over pre-sorted candidates.
std::vector<MatchedPair> assign(const std::vector<Candidate>& sorted, std::size_t num_pred,
                                std::size_t num_gt) {
  std::vector<char> pred_used(num_pred, 0);
  std::vector<char> gt_used(num_gt, 0);
  std::vector<MatchedPair> out;
  for (const Candidate& c : sorted) {
    if (pred_used[c.pred] || gt_used[c.gt]) continue;
    pred_used[c.pred] = 1;
    gt_used[c.gt] = 1;
    out.push_back({0, c.pred, c.gt, c.score});
  }
  return out;
}

void merge(MatchEntry& into, const MatchEntry& from, std::size_t image) {
  into.matches += from.matches;
  into.counted_predictions += from.counted_predictions;
  into.counted_ground_truths += from.counted_ground_truths;
  for (MatchedPair p : from.pairs) {
    p.image = image;
    into.pairs.push_back(p);
  }
}

void finish(MatchEntry& e) {
  e.prh = Prh::from_counts(e.matches, e.counted_predictions, e.counted_ground_truths);
}

nlohmann::json entry_json(const MatchEntry& e) {
  return {{"p", e.prh.precision},
          {"r", e.prh.recall},
          {"h", e.prh.hmean},
          {"matches", e.matches},
          {"num_pred", e.counted_predictions},
          {"num_gt", e.counted_ground_truths},
          {"p_undefined", e.prh.precision_undefined},
          {"r_undefined", e.prh.recall_undefined}};
}

}  // namespace

Prh Prh::from_counts(std::size_t matches, std::size_t predictions, std::size_t ground_truths) {
  Prh out;
  out.precision_undefined = predictions == 0;
  out.recall_undefined = ground_truths == 0;
  out.precision = predictions == 0 ? 0.0 : double(matches) / double(predictions);
  out.recall = ground_truths == 0 ? 0.0 : double(matches) / double(ground_truths);
  const double sum = out.precision + out.recall;
  out.hmean = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

MatchEntry match_polygons(const std::vector<Polygon>& preds, const std::vector<Polygon>& gts,
                          double iou_threshold, int resolution) {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw std::invalid_argument("match_polygons: threshold must lie in (0, 1)");
  }
  // IoU table, computed once.
  std::vector<double> table(preds.size() * gts.size(), 0.0);
  for (std::size_t p = 0; p < preds.size(); ++p) {
    for (std::size_t g = 0; g < gts.size(); ++g) {
      table[p * gts.size() + g] = iou(preds[p], gts[g], resolution);
    }
  }

  std::vector<char> counted(preds.size(), 1);
  for (std::size_t p = 0; p < preds.size(); ++p) {
    double best = 0.0;
    std::size_t best_g = gts.size();
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (table[p * gts.size() + g] > best) {
        best = table[p * gts.size() + g];
        best_g = g;
      }
    }
    if (best_g < gts.size() && !gts[best_g].care() && best >= kDontCareIou) counted[p] = 0;
  }

  std::vector<Candidate> candidates;
  for (std::size_t p = 0; p < preds.size(); ++p) {
    if (!counted[p]) continue;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const double v = table[p * gts.size() + g];
      if (gts[g].care() && v >= iou_threshold) candidates.push_back({p, g, v});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.gt < b.gt;
  });

  MatchEntry e;
  e.pairs = assign(candidates, preds.size(), gts.size());
  e.matches = e.pairs.size();
  e.counted_predictions = static_cast<std::size_t>(std::count(counted.begin(), counted.end(), 1));
  e.counted_ground_truths =
      static_cast<std::size_t>(std::count_if(gts.begin(), gts.end(), [](const Polygon& g) {
        return g.care();
      }));
  finish(e);
  return e;
}

MatchEntry match_points(const std::vector<Point2>& preds, const std::vector<Point2>& gts,
                        double dist) {
  if (!(dist > 0.0)) throw std::invalid_argument("match_points: dist must be > 0");
  std::vector<Candidate> candidates;
  for (std::size_t p = 0; p < preds.size(); ++p) {
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const double d = distance(preds[p], gts[g]);
      if (d <= dist) candidates.push_back({p, g, d});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score < b.score;
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.gt < b.gt;
  });
  MatchEntry e;
  e.pairs = assign(candidates, preds.size(), gts.size());
  e.matches = e.pairs.size();
  e.counted_predictions = preds.size();
  e.counted_ground_truths = gts.size();
  finish(e);
  return e;
}

EvalReport sweep(const std::vector<ImageDetections>& images, const std::vector<double>& thresholds,
                 int resolution) {
  if (thresholds.empty()) throw std::invalid_argument("sweep: no thresholds");
  EvalReport report;
  for (double t : thresholds) report.per_threshold[t] = MatchEntry{};
  for (std::size_t i = 0; i < images.size(); ++i) {
    const ImageDetections& img = images[i];
    report.counts.num_pred += img.predictions.size();
    report.counts.num_gt += static_cast<std::size_t>(
        std::count_if(img.ground_truths.begin(), img.ground_truths.end(),
                      [](const Polygon& g) { return g.care(); }));
    for (double t : thresholds) {
      const MatchEntry e = match_polygons(img.predictions, img.ground_truths, t, resolution);
      merge(report.per_threshold[t], e, i);
      if (t == thresholds.front()) {
        report.counts.num_dont_care_suppressed += img.predictions.size() - e.counted_predictions;
      }
    }
  }
  for (auto& [t, e] : report.per_threshold) finish(e);
  return report;
}

EvalReport sweep(const std::vector<Polygon>& preds, const std::vector<Polygon>& gts,
                 const std::vector<double>& thresholds) {
  return sweep(std::vector<ImageDetections>{{preds, gts}}, thresholds);
}

void sweep_points(EvalReport& report, const std::vector<ImagePoints>& images,
                  const std::vector<double>& radii) {
  for (double d : radii) {
    MatchEntry total;
    for (std::size_t i = 0; i < images.size(); ++i) {
      merge(total, match_points(images[i].predictions, images[i].ground_truths, d), i);
    }
    finish(total);
    report.per_dist[d] = std::move(total);
  }
}

std::string format_key(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string EvalReport::to_json() const {
  nlohmann::json doc;
  doc["label"] = label;
  doc["thresholds"] = nlohmann::json::object();
  for (const auto& [t, e] : per_threshold) doc["thresholds"][format_key(t)] = entry_json(e);
  doc["dist"] = nlohmann::json::object();
  for (const auto& [d, e] : per_dist) doc["dist"][format_key(d)] = entry_json(e);
  doc["counts"] = {{"num_pred", counts.num_pred},
                   {"num_gt", counts.num_gt},
                   {"num_dont_care_suppressed", counts.num_dont_care_suppressed}};
  return doc.dump(2);
}

std::string EvalReport::to_table() const {
  std::ostringstream out;
  char line[128];
  if (!label.empty()) out << label << "\n";
  std::snprintf(line, sizeof line, "%-10s %7s %7s %7s\n", "IOU", "P", "R", "H");
  out << line;
  for (const auto& [t, e] : per_threshold) {
    std::snprintf(line, sizeof line, "%-10s %7.1f %7.1f %7.1f\n", format_key(t).c_str(),
                  100.0 * e.prh.precision, 100.0 * e.prh.recall, 100.0 * e.prh.hmean);
    out << line;
  }
  if (!per_dist.empty()) {
    std::snprintf(line, sizeof line, "%-10s %7s %7s %7s\n", "DIST", "P", "R", "H");
    out << line;
    for (const auto& [d, e] : per_dist) {
      std::snprintf(line, sizeof line, "%-10s %7.1f %7.1f %7.1f\n", format_key(d).c_str(),
                    100.0 * e.prh.precision, 100.0 * e.prh.recall, 100.0 * e.prh.hmean);
      out << line;
    }
  }
  return out.str();
}

}  // namespace pointpoly
