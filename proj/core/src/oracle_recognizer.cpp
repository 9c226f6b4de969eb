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

#include <algorithm>
#include <stdexcept>

#include "pointpoly/errors.hpp"
#include "pointpoly/recognizer.hpp"

namespace pointpoly {

void OracleRecognizer::register_instance(const Polygon& gt, const std::string& text,
                                         std::optional<std::vector<Interval>> char_spans) {
  if (text.empty()) throw std::invalid_argument("oracle: ground-truth text must be non-empty");
  std::vector<Interval> spans;
  if (char_spans) {
    if (char_spans->size() != text.size()) {
      throw std::invalid_argument("oracle: one span per character required");
    }
    spans = std::move(*char_spans);
  } else {
    const BoundingBox b = gt.bounds();
    const double step = (b.max_x - b.min_x) / static_cast<double>(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
      spans.push_back({b.min_x + step * static_cast<double>(k),
                       b.min_x + step * static_cast<double>(k + 1)});
    }
  }
  instances_.push_back({gt, text, std::move(spans)});
}

RecognitionResult OracleRecognizer::recognize(const PlacedCrop& crop) const {
  if (instances_.empty()) throw OracleUnregistered("oracle recognizer has no registered instance");
  const int width = static_cast<int>(crop.column_extents.size());

  const Instance* best = nullptr;
  double best_iou = 0.0;
  for (const Instance& inst : instances_) {
    const double v = iou_best(crop.region, inst.polygon);
    if (v > best_iou) {
      best_iou = v;
      best = &inst;
    }
  }
  if (best == nullptr || width == 0) return empty_recognition(width);

  RecognitionResult r;
  r.text = best->text;
  r.char_confidences.assign(best->text.size(), best_iou);
  const int steps = static_cast<int>(best->text.size());
  r.attention = AttentionMap(steps + 1, width);
  for (int t = 0; t <= steps; ++t) {
    auto row = r.attention.row(t);
    int hits = 0;
    if (t < steps) {
      for (int i = 0; i < width; ++i) {
        if (crop.column_extents[i].overlaps(best->spans[t])) {
          row[i] = 1.0;
          ++hits;
        }
      }
    }
    if (hits == 0) {
      std::fill(row.begin(), row.end(), 1.0 / width);
    } else {
      for (double& v : row) v /= hits;
    }
  }
  return r;
}

}  // namespace pointpoly
