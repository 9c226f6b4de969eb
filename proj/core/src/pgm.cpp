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

#include "pointpoly/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pointpoly/errors.hpp"

namespace pointpoly {

namespace {

constexpr int kControlPoints = 2 * kContourPoints;
constexpr int kGridStride = 4;
constexpr double kMinSeparation = 1.0;

double polyline_length(const std::array<Point2, kContourPoints>& pts) {
  double len = 0.0;
  for (int i = 1; i < kContourPoints; ++i) len += distance(pts[i - 1], pts[i]);
  return len;
}

// Unit normals of an open contour, rotated from the tangent towards +y.
std::array<Point2, kContourPoints> contour_normals(const std::array<Point2, kContourPoints>& pts) {
  std::array<Point2, kContourPoints> out{};
  for (int i = 0; i < kContourPoints; ++i) {
    const Point2 t = pts[std::min(i + 1, kContourPoints - 1)] - pts[std::max(i - 1, 0)];
    const double len = std::hypot(t.x, t.y);
    out[i] = len > 0.0 ? Point2{-t.y / len, t.x / len} : Point2{0.0, 1.0};
  }
  return out;
}

// Mapping from output coordinates to image coordinates, evaluated exactly on
// a coarse lattice and interpolated bilinearly in between.
class WarpGrid {
 public:
  WarpGrid(const TpsTransform& t, int width, int height)
      : nx_((width + kGridStride - 1) / kGridStride + 1),
        ny_((height + kGridStride - 1) / kGridStride + 1),
        width_(width),
        height_(height),
        nodes_(std::size_t(nx_) * ny_) {
    for (int j = 0; j < ny_; ++j) {
      for (int i = 0; i < nx_; ++i) nodes_[std::size_t(j) * nx_ + i] = t(node(i, j));
    }
  }

  Point2 operator()(double u, double v) const {
    const double gu = std::clamp(u / kGridStride, 0.0, static_cast<double>(nx_ - 1));
    const double gv = std::clamp(v / kGridStride, 0.0, static_cast<double>(ny_ - 1));
    const int i = std::min(static_cast<int>(gu), nx_ - 2 < 0 ? 0 : nx_ - 2);
    const int j = std::min(static_cast<int>(gv), ny_ - 2 < 0 ? 0 : ny_ - 2);
    const int i1 = std::min(i + 1, nx_ - 1);
    const int j1 = std::min(j + 1, ny_ - 1);
    // Node spacing is uneven only in the last cell, where the lattice is clipped.
    const Point2 n00 = node(i, j);
    const Point2 n11 = node(i1, j1);
    const double fu = n11.x > n00.x ? (u - n00.x) / (n11.x - n00.x) : 0.0;
    const double fv = n11.y > n00.y ? (v - n00.y) / (n11.y - n00.y) : 0.0;
    const Point2 a = at(i, j) + fu * (at(i1, j) - at(i, j));
    const Point2 b = at(i, j1) + fu * (at(i1, j1) - at(i, j1));
    return a + fv * (b - a);
  }

 private:
  Point2 node(int i, int j) const {
    return {std::min(static_cast<double>(i * kGridStride), static_cast<double>(width_)),
            std::min(static_cast<double>(j * kGridStride), static_cast<double>(height_))};
  }
  const Point2& at(int i, int j) const { return nodes_[std::size_t(j) * nx_ + i]; }

  int nx_;
  int ny_;
  int width_;
  int height_;
  std::vector<Point2> nodes_;
};

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

}  // namespace

Polygon BoundaryPolygon::as_polygon() const {
  std::vector<Point2> v(upper.begin(), upper.end());
  v.insert(v.end(), lower.rbegin(), lower.rend());
  return Polygon(std::move(v));
}

std::optional<Polygon> BoundaryPolygon::try_polygon() const {
  std::vector<Point2> v(upper.begin(), upper.end());
  v.insert(v.end(), lower.rbegin(), lower.rend());
  return Polygon::try_make(std::move(v));
}

double BoundaryPolygon::mean_contour_length() const {
  return 0.5 * (polyline_length(upper) + polyline_length(lower));
}

std::array<Point2, 2 * kContourPoints> BoundaryPolygon::control_points() const {
  std::array<Point2, kControlPoints> out{};
  std::copy(upper.begin(), upper.end(), out.begin());
  std::copy(lower.begin(), lower.end(), out.begin() + kContourPoints);
  return out;
}

BoundaryPolygon sample_boundary(const Rect& rect) {
  const double c = std::cos(rect.angle);
  const double s = std::sin(rect.angle);
  auto place = [&](double lx, double ly) {
    return Point2{rect.cx + c * lx - s * ly, rect.cy + s * lx + c * ly};
  };
  BoundaryPolygon b;
  for (int i = 0; i < kContourPoints; ++i) {
    const double lx = -0.5 * rect.width + rect.width * i / (kContourPoints - 1);
    b.upper[i] = place(lx, -0.5 * rect.height);
    b.lower[i] = place(lx, 0.5 * rect.height);
  }
  return b;
}

std::array<Point2, 2 * kContourPoints> rectangle_control_points(double out_width,
                                                                double out_height) {
  std::array<Point2, kControlPoints> out{};
  for (int i = 0; i < kContourPoints; ++i) {
    const double x = out_width * i / (kContourPoints - 1);
    out[i] = {x, 0.0};
    out[kContourPoints + i] = {x, out_height};
  }
  return out;
}

int rectified_width(const BoundaryPolygon& b) {
  double height = 0.0;
  for (int i = 0; i < kContourPoints; ++i) height += distance(b.upper[i], b.lower[i]);
  height /= kContourPoints;
  if (!(height > 1e-9)) return kMaxRectifiedWidth;
  const double w = b.mean_contour_length() * kRectifiedHeight / height;
  return static_cast<int>(std::clamp(std::lround(w), 32L, static_cast<long>(kMaxRectifiedWidth)));
}

TpsTransform boundary_to_rectangle(const BoundaryPolygon& b, double out_width, double out_height,
                                   double regularization) {
  const auto src = b.control_points();
  const auto dst = rectangle_control_points(out_width, out_height);
  return fit_tps(src, dst, regularization);
}

TpsTransform rectangle_to_boundary(const BoundaryPolygon& b, double out_width, double out_height,
                                   double regularization) {
  const auto src = rectangle_control_points(out_width, out_height);
  const auto dst = b.control_points();
  return fit_tps(src, dst, regularization);
}

RectifiedCrop rectify(const GrayImage& img, const BoundaryPolygon& b, int out_width,
                      int out_height, double regularization) {
  if (out_width < 1 || out_height < 1) throw std::invalid_argument("rectify: empty output");
  Polygon region = b.as_polygon();
  TpsTransform to_image = rectangle_to_boundary(b, out_width, out_height, regularization);
  const WarpGrid grid(to_image, out_width, out_height);

  std::vector<double> pixels(std::size_t(out_width) * out_height);
  for (int j = 0; j < out_height; ++j) {
    for (int i = 0; i < out_width; ++i) {
      const Point2 p = grid(i + 0.5, j + 0.5);
      pixels[std::size_t(j) * out_width + i] = sample_bilinear(img, p.x - 0.5, p.y - 0.5);
    }
  }

  // Image-space x extent of each output column, from its two bounding lines.
  std::vector<double> line_lo(out_width + 1);
  std::vector<double> line_hi(out_width + 1);
  for (int i = 0; i <= out_width; ++i) {
    const double xs[3] = {grid(i, 0.0).x, grid(i, 0.5 * out_height).x,
                          grid(i, static_cast<double>(out_height)).x};
    line_lo[i] = std::min({xs[0], xs[1], xs[2]});
    line_hi[i] = std::max({xs[0], xs[1], xs[2]});
  }
  std::vector<Interval> extents(out_width);
  for (int i = 0; i < out_width; ++i) {
    extents[i] = {std::min(line_lo[i], line_lo[i + 1]), std::max(line_hi[i], line_hi[i + 1])};
  }

  return RectifiedCrop{
      PlacedCrop{GrayImage(out_width, out_height, std::move(pixels)), std::move(region),
                 std::move(extents)},
      std::move(to_image)};
}

GrayImage rectify_crop(const GrayImage& img, const BoundaryPolygon& b, int out_width,
                       int out_height) {
  return rectify(img, b, out_width, out_height).crop.pixels;
}

void RefineConfig::validate() const {
  if (max_rounds < 1) throw ConfigError("refine: max_rounds must be >= 1");
  if (!(min_step > 0.0)) throw ConfigError("refine: min_step must be > 0");
  if (initial_step && !(*initial_step > min_step)) {
    throw ConfigError("refine: initial_step must exceed min_step");
  }
  if (!(smoothness_weight >= 0.0)) throw ConfigError("refine: smoothness_weight must be >= 0");
  if (!(regularization >= 0.0)) throw ConfigError("refine: regularization must be >= 0");
}

double rectified_score(const GrayImage& img, const BoundaryPolygon& b, const Recognizer& recognizer,
                       double regularization) {
  try {
    const RectifiedCrop rc = rectify(img, b, rectified_width(b), kRectifiedHeight, regularization);
    return aggregate_confidence(recognizer.recognize(rc.crop));
  } catch (const SingularSystem&) {
    return 0.0;
  } catch (const InvalidPolygon&) {
    return 0.0;
  }
}

RefineResult refine_boundary(const GrayImage& img, const BoundaryPolygon& init,
                             const Recognizer& recognizer, const RefineConfig& cfg) {
  cfg.validate();
  const auto up_normals = contour_normals(init.upper);
  const auto low_normals = contour_normals(init.lower);

  double height = 0.0;
  for (int i = 0; i < kContourPoints; ++i) height += distance(init.upper[i], init.lower[i]);
  height = std::max(height / kContourPoints, 1e-9);

  std::array<double, kControlPoints> offsets{};
  auto build = [&](const std::array<double, kControlPoints>& d) {
    BoundaryPolygon b;
    for (int i = 0; i < kContourPoints; ++i) {
      b.upper[i] = init.upper[i] + d[i] * up_normals[i];
      b.lower[i] = init.lower[i] + d[kContourPoints + i] * low_normals[i];
    }
    return b;
  };
  auto roughness = [&](const std::array<double, kControlPoints>& d) {
    double acc = 0.0;
    for (int base : {0, kContourPoints}) {
      for (int i = 1; i + 1 < kContourPoints; ++i) {
        const double dd = (d[base + i - 1] - 2.0 * d[base + i] + d[base + i + 1]) / height;
        acc += dd * dd;
      }
    }
    return acc;
  };
  auto admissible = [&](const BoundaryPolygon& b) {
    for (int i = 0; i < kContourPoints; ++i) {
      const Point2 gap = b.lower[i] - b.upper[i];
      const Point2 n = 0.5 * (up_normals[i] + low_normals[i]);
      if (gap.x * n.x + gap.y * n.y < kMinSeparation) return false;
    }
    return true;
  };

  RefineResult result;
  auto objective = [&](const std::array<double, kControlPoints>& d) {
    ++result.evaluations;
    return rectified_score(img, build(d), recognizer, cfg.regularization) -
           cfg.smoothness_weight * roughness(d);
  };

  double current = objective(offsets);
  result.initial_objective = current;

  std::mt19937_64 rng(cfg.rng_seed);
  std::array<int, kControlPoints> order{};
  for (int i = 0; i < kControlPoints; ++i) order[i] = i;

  double step = cfg.initial_step.value_or(0.25 * height);
  while (result.rounds < cfg.max_rounds && step >= cfg.min_step) {
    ++result.rounds;
    // Fisher-Yates on raw engine output: identical across standard libraries.
    for (int i = kControlPoints - 1; i > 0; --i) {
      std::swap(order[i], order[draw_below(rng, static_cast<std::uint64_t>(i) + 1)]);
    }
    bool accepted = false;
    for (int k : order) {
      double best_value = current;
      double best_delta = 0.0;
      for (double delta : {step, -step}) {
        auto trial = offsets;
        trial[k] += delta;
        if (!admissible(build(trial))) continue;
        const double value = objective(trial);
        if (value > best_value + 1e-12) {
          best_value = value;
          best_delta = delta;
        }
      }
      if (best_delta != 0.0) {
        offsets[k] += best_delta;
        current = best_value;
        accepted = true;
      }
    }
    if (!accepted) step *= 0.5;
  }

  result.boundary = build(offsets);
  result.objective = current;
  return result;
}

}  // namespace pointpoly
