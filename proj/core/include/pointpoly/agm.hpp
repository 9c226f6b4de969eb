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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pointpoly/geometry.hpp"
#include "pointpoly/raster.hpp"
#include "pointpoly/recognizer.hpp"

namespace pointpoly {

/// Anchor extents as fractions of the image (width, height).
struct AnchorSize {
  double width_fraction;
  double height_fraction;

  friend bool operator==(const AnchorSize&, const AnchorSize&) = default;
};

/// Default anchor shapes grouped by aspect-ratio family.
struct AnchorLattice {
  std::vector<AnchorSize> extra_long;
  std::vector<AnchorSize> long_;
  std::vector<AnchorSize> normal;
  std::vector<AnchorSize> short_;

  /// All entries in family order: extra-long, long, normal, short.
  std::vector<AnchorSize> entries() const;
  std::size_t size() const;

  /// Throws ConfigError when a fraction falls outside (0, 1] or the lattice is empty.
  void validate() const;

  /// {"extra_long": [[wf,hf],...], "long": [...], "normal": [...], "short": [...]}
  static AnchorLattice from_json(const std::string& text);
  static AnchorLattice load(const std::filesystem::path& path);
  std::string to_json() const;

  friend bool operator==(const AnchorLattice&, const AnchorLattice&) = default;
};

/// 4 extra-long, 6 long, 5 normal and 6 short anchors:
///   extra-long (2/3, 1/5q) for q = 1, 2 and (2/5, 1/5q) for q = 3, 4
///   long       (2/5j, 1/5i) for (j, i) paired index-wise
///   normal     (2/5k, 2/5k) for k in {1, 2, 3, 6, 10}
///   short      (1/5i, 2/5j) for (j, i) paired index-wise
/// with j in {1, 2, 4, 6, 8, 10} and i in {1, ..., 6}.
AnchorLattice default_lattice();

/// One axis-aligned rect per lattice entry centered on the point. Anchors may
/// overhang the border (crops clamp). Throws PointOutOfBounds.
std::vector<Rect> generate_anchors(Point2 point, const GrayImage& img,
                                   const AnchorLattice& lattice);

struct ScoredAnchor {
  Rect rect;
  RecognitionResult recognition;
  double score = 0.0;
  std::size_t index = 0;  // position in the input list
};

/// Crop of an axis-aligned rect, with its placement.
PlacedCrop place_axis_aligned(const GrayImage& img, const Rect& rect);

/// Highest aggregate confidence wins; ties go to the smaller area, then the
/// earlier entry. Throws EmptyAnchorList.
ScoredAnchor select_anchor(const std::vector<Rect>& anchors, const GrayImage& img,
                           const Recognizer& recognizer);

}  // namespace pointpoly
