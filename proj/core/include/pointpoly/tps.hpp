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

#include <span>
#include <vector>

#include <Eigen/Core>

#include "pointpoly/geometry.hpp"

namespace pointpoly {

/// Radial basis U(r) = r^2 ln r with U(0) = 0.
double tps_kernel(double r);

/// Thin-plate spline Phi(p) = m0 + M p + sum_i w_i U(|p - p_i|) mapping
/// source control points onto target control points.
class TpsTransform {
 public:
  using Params = Eigen::Matrix<double, 2, Eigen::Dynamic>;

  TpsTransform(std::vector<Point2> source, std::vector<Point2> target, Params params);

  const std::vector<Point2>& source_points() const { return source_; }
  const std::vector<Point2>& target_points() const { return target_; }

  /// Shape [2, N+3]: column 0 is m0, columns 1-2 are M, columns 3.. are the
  /// radial weights w_1..w_N (one row per output coordinate).
  const Params& params() const { return params_; }

  Point2 offset() const { return {params_(0, 0), params_(1, 0)}; }
  Eigen::Matrix2d linear() const { return params_.block<2, 2>(0, 1); }
  Eigen::Matrix2Xd weights() const { return params_.rightCols(params_.cols() - 3); }

  Point2 operator()(Point2 p) const;

 private:
  std::vector<Point2> source_;
  std::vector<Point2> target_;
  Params params_;
};

/// Solves [[K + lambda I, P], [P^T, 0]] for the spline parameters, with
/// K_ij = U(|p_i - p_j|) and P rows (1, x_i, y_i). Throws std::invalid_argument
/// on size mismatch or N < 3 and SingularSystem on collinear or duplicated
/// source points.
TpsTransform fit_tps(std::span<const Point2> source, std::span<const Point2> target,
                     double regularization = 0.0);

Point2 apply_tps(const TpsTransform& t, Point2 p);

}  // namespace pointpoly
