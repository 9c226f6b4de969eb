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

// Reference computations written independently of the library, used as test
// oracles. Nothing here calls into pointpoly beyond plain value types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pointpoly/geometry.hpp"

namespace oracle {

struct Box {
  double x0, y0, x1, y1;
};

inline Box box_of(const pointpoly::Rect& r) {
  return {r.cx - r.width / 2, r.cy - r.height / 2, r.cx + r.width / 2, r.cy + r.height / 2};
}

inline double box_iou(const Box& a, const Box& b) {
  const double iw = std::max(0.0, std::min(a.x1, b.x1) - std::max(a.x0, b.x0));
  const double ih = std::max(0.0, std::min(a.y1, b.y1) - std::max(a.y0, b.y0));
  const double inter = iw * ih;
  const double uni = (a.x1 - a.x0) * (a.y1 - a.y0) + (b.x1 - b.x0) * (b.y1 - b.y0) - inter;
  return uni > 0 ? inter / uni : 0.0;
}

inline double rect_iou(const pointpoly::Rect& a, const pointpoly::Rect& b) {
  return box_iou(box_of(a), box_of(b));
}

// Crossing-number containment on a raw vertex list.
inline bool inside(const std::vector<pointpoly::Point2>& v, double x, double y) {
  bool in = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > y) != (v[j].y > y)) {
      const double xc = v[j].x + (y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (x < xc) in = !in;
    }
  }
  return in;
}

// Mean of the covered sample centers on a grid with `scale` samples per unit.
inline pointpoly::Point2 mass_centroid(const std::vector<pointpoly::Point2>& v, int scale) {
  double x0 = v[0].x, x1 = v[0].x, y0 = v[0].y, y1 = v[0].y;
  for (const auto& p : v) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  const double step = 1.0 / scale;
  double sx = 0, sy = 0;
  long n = 0;
  for (double y = std::floor(y0) + step / 2; y < y1; y += step) {
    for (double x = std::floor(x0) + step / 2; x < x1; x += step) {
      if (inside(v, x, y)) {
        sx += x;
        sy += y;
        ++n;
      }
    }
  }
  if (n == 0) throw std::runtime_error("mass_centroid: empty polygon");
  return {sx / n, sy / n};
}

// Gaussian elimination with partial pivoting on a dense square system.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-14) throw std::runtime_error("solve_dense: singular");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

inline double radial(double r) { return r > 0 ? r * r * std::log(r) : 0.0; }

// Thin-plate spline fitted and evaluated from scratch: unknowns are the N
// radial weights followed by the affine terms (1, x, y), solved per axis.
inline pointpoly::Point2 tps_eval(const std::vector<pointpoly::Point2>& src,
                                  const std::vector<pointpoly::Point2>& dst,
                                  pointpoly::Point2 probe) {
  const std::size_t n = src.size();
  std::vector<std::vector<double>> a(n + 3, std::vector<double>(n + 3, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = radial(std::hypot(src[i].x - src[j].x, src[i].y - src[j].y));
    }
    a[i][n] = a[n][i] = 1.0;
    a[i][n + 1] = a[n + 1][i] = src[i].x;
    a[i][n + 2] = a[n + 2][i] = src[i].y;
  }
  double out[2];
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<double> rhs(n + 3, 0.0);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = axis == 0 ? dst[i].x : dst[i].y;
    const std::vector<double> sol = solve_dense(a, rhs);
    double v = sol[n] + sol[n + 1] * probe.x + sol[n + 2] * probe.y;
    for (std::size_t i = 0; i < n; ++i) {
      v += sol[i] * radial(std::hypot(probe.x - src[i].x, probe.y - src[i].y));
    }
    out[axis] = v;
  }
  return {out[0], out[1]};
}

}  // namespace oracle
