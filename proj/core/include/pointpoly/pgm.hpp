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

#include <array>
#include <cstdint>
#include <optional>

#include "pointpoly/geometry.hpp"
#include "pointpoly/raster.hpp"
#include "pointpoly/recognizer.hpp"
#include "pointpoly/tps.hpp"

namespace pointpoly {

inline constexpr int kContourPoints = 10;
inline constexpr int kRectifiedHeight = 32;
inline constexpr int kMaxRectifiedWidth = 1024;

/// Ten points on the upper and ten on the lower text contour, both ordered
/// left to right.
struct BoundaryPolygon {
  std::array<Point2, kContourPoints> upper;
  std::array<Point2, kContourPoints> lower;

  /// Upper left-to-right followed by lower right-to-left.
  Polygon as_polygon() const;
  std::optional<Polygon> try_polygon() const;

  /// Mean of the upper and lower polyline lengths.
  double mean_contour_length() const;

  /// Control points in fitting order: upper then lower, left to right.
  std::array<Point2, 2 * kContourPoints> control_points() const;

  friend bool operator==(const BoundaryPolygon&, const BoundaryPolygon&) = default;
};

/// Evenly spaced points on the top and bottom edges, corners included.
BoundaryPolygon sample_boundary(const Rect& rect);

/// Control points of the out_width x out_height rectangle matching
/// BoundaryPolygon::control_points().
std::array<Point2, 2 * kContourPoints> rectangle_control_points(double out_width,
                                                                double out_height);

/// Width of the rectified crop for a boundary: the mean contour length scaled
/// by kRectifiedHeight / mean boundary height (aspect preserved), clamped to
/// [32, kMaxRectifiedWidth].
int rectified_width(const BoundaryPolygon& b);

/// TPS from the boundary (text shape) onto the rectangle.
TpsTransform boundary_to_rectangle(const BoundaryPolygon& b, double out_width, double out_height,
                                   double regularization = 0.0);
/// TPS from the rectangle back onto the boundary (swapped correspondences).
TpsTransform rectangle_to_boundary(const BoundaryPolygon& b, double out_width, double out_height,
                                   double regularization = 0.0);

struct RectifiedCrop {
  PlacedCrop crop;
  TpsTransform to_image;  // rectangle -> image
};

/// Warps the region enclosed by the boundary onto an out_width x out_height
/// raster. Each output pixel center is mapped into the image through the
/// rectangle-to-boundary spline and sampled bilinearly. Throws SingularSystem
/// or InvalidPolygon for degenerate boundaries.
RectifiedCrop rectify(const GrayImage& img, const BoundaryPolygon& b, int out_width,
                      int out_height, double regularization = 0.0);

GrayImage rectify_crop(const GrayImage& img, const BoundaryPolygon& b, int out_width,
                       int out_height);

struct RefineConfig {
  int max_rounds = 30;
  /// Unset: a quarter of the initial boundary height.
  std::optional<double> initial_step;
  double min_step = 0.5;
  double smoothness_weight = 0.01;
  std::uint64_t rng_seed = 0;
  double regularization = 0.0;

  /// Throws ConfigError on violated invariants.
  void validate() const;
};

struct RefineResult {
  BoundaryPolygon boundary;
  double initial_objective = 0.0;
  double objective = 0.0;
  int rounds = 0;
  int evaluations = 0;
};

/// Recognition score of the rectified crop for a boundary (0 when the
/// boundary is degenerate).
double rectified_score(const GrayImage& img, const BoundaryPolygon& b, const Recognizer& recognizer,
                       double regularization = 0.0);

/// Derivative-free coordinate descent over the 20 per-point offsets along the
/// initial contour normals. Objective: rectified recognition score minus
/// smoothness_weight times the summed squared second differences of the
/// offsets, measured in units of the initial boundary height. Moves are
/// accepted only on strict improvement; the step halves after a round with no
/// accepted move.
RefineResult refine_boundary(const GrayImage& img, const BoundaryPolygon& init,
                             const Recognizer& recognizer, const RefineConfig& cfg);

}  // namespace pointpoly
