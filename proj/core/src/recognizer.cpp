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

#include "pointpoly/recognizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pointpoly {

double aggregate_confidence(const RecognitionResult& r) {
  if (r.char_confidences.empty()) return 0.0;
  const double sum = std::accumulate(r.char_confidences.begin(), r.char_confidences.end(), 0.0);
  return sum / static_cast<double>(r.char_confidences.size());
}

std::vector<double> attention_row(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("attention_row: empty score list");
  const double peak = *std::max_element(scores.begin(), scores.end());
  std::vector<double> out(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = std::exp(scores[i] - peak);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

RecognitionResult empty_recognition(int feature_width) {
  RecognitionResult r;
  r.attention = AttentionMap(1, std::max(1, feature_width));
  auto row = r.attention.row(0);
  std::fill(row.begin(), row.end(), 1.0 / static_cast<double>(row.size()));
  return r;
}

}  // namespace pointpoly
