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

#include "pointpoly/prm.hpp"

#include <algorithm>

#include "pointpoly/errors.hpp"

namespace pointpoly {

void PrmConfig::validate() const {
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("prm: tau must be in (0, 1)");
  if (!(regularization >= 0.0)) throw ConfigError("prm: regularization must be >= 0");
}

BinaryAttention binarize_attention(const AttentionMap& attention, double tau) {
  BinaryAttention out{attention.rows(), attention.cols(), {}};
  out.data.reserve(std::size_t(out.rows) * out.cols);
  for (int t = 0; t < out.rows; ++t) {
    for (double a : attention.row(t)) out.data.push_back(a >= tau ? 1 : 0);
  }
  return out;
}

std::optional<std::pair<int, int>> attended_span(const BinaryAttention& binary) {
  int first = -1;
  int last = -1;
  for (int i = 0; i < binary.cols; ++i) {
    bool any = false;
    for (int t = 0; t + 1 < binary.rows && !any; ++t) any = binary.at(t, i);
    if (any) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) return std::nullopt;
  return std::make_pair(first, last);
}

TrimResult trim_boundary_detailed(const BoundaryPolygon& b, const GrayImage& img,
                                  const Recognizer& recognizer, const PrmConfig& cfg) {
  cfg.validate();
  TrimResult result{b, std::nullopt, 0, {}};
  const int width = rectified_width(b);
  std::optional<RectifiedCrop> rc;
  try {
    rc.emplace(rectify(img, b, width, kRectifiedHeight, cfg.regularization));
  } catch (const SingularSystem&) {
    return result;
  } catch (const InvalidPolygon&) {
    return result;
  }
  result.recognition = recognizer.recognize(rc->crop);
  result.feature_width = result.recognition.feature_width();
  result.span = attended_span(binarize_attention(result.recognition.attention, cfg.tau));
  if (!result.span || result.feature_width == 0) return result;

  const double fw = result.feature_width;
  const double x0 = width * (result.span->first / fw);
  const double x1 = width * ((result.span->second + 1) / fw);
  for (int i = 0; i < kContourPoints; ++i) {
    const double x = x0 + (x1 - x0) * i / (kContourPoints - 1);
    result.boundary.upper[i] = rc->to_image({x, 0.0});
    result.boundary.lower[i] = rc->to_image({x, double(kRectifiedHeight)});
  }
  return result;
}

BoundaryPolygon trim_boundary(const BoundaryPolygon& b, const GrayImage& img,
                              const Recognizer& recognizer, const PrmConfig& cfg) {
  return trim_boundary_detailed(b, img, recognizer, cfg).boundary;
}

}  // namespace pointpoly
