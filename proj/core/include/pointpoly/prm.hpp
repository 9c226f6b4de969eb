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

#include <optional>
#include <utility>
#include <vector>

#include "pointpoly/pgm.hpp"
#include "pointpoly/recognizer.hpp"

namespace pointpoly {

struct PrmConfig {
  /// Attention threshold, strictly inside (0, 1).
  double tau = 0.03;
  double regularization = 0.0;

  void validate() const;
};

/// T x W matrix of 0/1 flags.
struct BinaryAttention {
  int rows = 0;
  int cols = 0;
  std::vector<unsigned char> data;

  bool at(int t, int i) const { return data[std::size_t(t) * cols + i] != 0; }
};

/// 1 where a_{t,i} >= tau, 0 otherwise.
BinaryAttention binarize_attention(const AttentionMap& attention, double tau);

/// Inclusive column range [first, last] attended by any step except the final
/// end-of-sequence row; nullopt when nothing is attended.
std::optional<std::pair<int, int>> attended_span(const BinaryAttention& binary);

struct TrimResult {
  BoundaryPolygon boundary;
  /// Attended feature columns, absent when the span was empty.
  std::optional<std::pair<int, int>> span;
  int feature_width = 0;
  RecognitionResult recognition;
};

/// Trims the boundary horizontally to the attended column span of its
/// rectified crop. The span maps to the fraction [first/W, (last+1)/W] of the
/// rectified width; that sub-rectangle's border samples are carried back to
/// the image through the rectangle-to-boundary spline. An empty span leaves
/// the boundary unchanged.
TrimResult trim_boundary_detailed(const BoundaryPolygon& b, const GrayImage& img,
                                  const Recognizer& recognizer, const PrmConfig& cfg);

BoundaryPolygon trim_boundary(const BoundaryPolygon& b, const GrayImage& img,
                              const Recognizer& recognizer, const PrmConfig& cfg);

}  // namespace pointpoly
