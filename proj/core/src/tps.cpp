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

#include "pointpoly/tps.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

#include "pointpoly/errors.hpp"

namespace pointpoly {

double tps_kernel(double r) {
  if (r <= 0.0) return 0.0;
  return r * r * std::log(r);
}

TpsTransform::TpsTransform(std::vector<Point2> source, std::vector<Point2> target, Params params)
    : source_(std::move(source)), target_(std::move(target)), params_(std::move(params)) {
  if (source_.size() != target_.size() ||
      params_.cols() != static_cast<Eigen::Index>(source_.size()) + 3) {
    throw std::invalid_argument("TpsTransform: inconsistent sizes");
  }
}

Point2 TpsTransform::operator()(Point2 p) const {
  double x = params_(0, 0) + params_(0, 1) * p.x + params_(0, 2) * p.y;
  double y = params_(1, 0) + params_(1, 1) * p.x + params_(1, 2) * p.y;
  for (std::size_t i = 0; i < source_.size(); ++i) {
    // r^2 ln r = 0.5 r^2 ln r^2, without the square root.
    const double dx = p.x - source_[i].x;
    const double dy = p.y - source_[i].y;
    const double r2 = dx * dx + dy * dy;
    const double u = r2 > 0.0 ? 0.5 * r2 * std::log(r2) : 0.0;
    x += params_(0, 3 + i) * u;
    y += params_(1, 3 + i) * u;
  }
  return {x, y};
}

TpsTransform fit_tps(std::span<const Point2> source, std::span<const Point2> target,
                     double regularization) {
  if (source.size() != target.size()) {
    throw std::invalid_argument("fit_tps: source and target sizes differ");
  }
  if (source.size() < 3) throw std::invalid_argument("fit_tps: need at least 3 control points");
  if (regularization < 0.0) throw std::invalid_argument("fit_tps: negative regularization");

  const auto n = static_cast<Eigen::Index>(source.size());
  // Centering the affine block keeps P well scaled; m0 is shifted back below.
  Point2 c{0.0, 0.0};
  for (const Point2& p : source) c = c + p;
  c = (1.0 / static_cast<double>(n)) * c;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 3, n + 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double u = tps_kernel(distance(source[i], source[j]));
      a(i, j) = u;
      a(j, i) = u;
    }
    a(i, i) = regularization;
    const Point2 q = source[i] - c;
    a(i, n) = a(n, i) = 1.0;
    a(i, n + 1) = a(n + 1, i) = q.x;
    a(i, n + 2) = a(n + 2, i) = q.y;
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n + 3, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    b(i, 0) = target[i].x;
    b(i, 1) = target[i].y;
  }

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (lu.rank() < n + 3) {
    throw SingularSystem("fit_tps: singular system (collinear or duplicated control points)");
  }
  Eigen::MatrixXd x = lu.solve(b);
  // One step of iterative refinement.
  x += lu.solve(b - a * x);

  TpsTransform::Params params(2, n + 3);
  for (int d = 0; d < 2; ++d) {
    const double m_x = x(n + 1, d);
    const double m_y = x(n + 2, d);
    params(d, 0) = x(n, d) - m_x * c.x - m_y * c.y;
    params(d, 1) = m_x;
    params(d, 2) = m_y;
    for (Eigen::Index i = 0; i < n; ++i) params(d, 3 + i) = x(i, d);
  }
  return TpsTransform(std::vector<Point2>(source.begin(), source.end()),
                      std::vector<Point2>(target.begin(), target.end()), std::move(params));
}

Point2 apply_tps(const TpsTransform& t, Point2 p) { return t(p); }

}  // namespace pointpoly
