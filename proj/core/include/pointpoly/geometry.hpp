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
#include <span>
#include <vector>

namespace pointpoly {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

double distance(Point2 a, Point2 b);

/// Rectangle given by its center, extents and rotation (radians, about the
/// center). Image coordinates: x to the right, y downwards.
struct Rect {
  double cx = 0.0;
  double cy = 0.0;
  double width = 1.0;
  double height = 1.0;
  double angle = 0.0;

  /// Axis-aligned rect from its top-left corner.
  static Rect from_corner(double x, double y, double width, double height);

  double left() const { return cx - 0.5 * width; }
  double top() const { return cy - 0.5 * height; }
  double area() const { return width * height; }
};

/// Closed interval on the real line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool overlaps(const Interval& o) const { return lo < o.hi && o.lo < hi; }
};

struct BoundingBox {
  double min_x, min_y, max_x, max_y;
};

/// Ordered vertex list with positive signed (shoelace) area. Clockwise input
/// is reversed on construction; consecutive duplicate vertices are dropped.
/// Self-intersecting input is accepted.
class Polygon {
 public:
  /// Throws InvalidPolygon when fewer than three distinct vertices remain or
  /// the signed area is zero.
  explicit Polygon(std::vector<Point2> vertices, bool care = true);

  static std::optional<Polygon> try_make(std::vector<Point2> vertices, bool care = true);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool care() const { return care_; }
  void set_care(bool care) { care_ = care; }

  BoundingBox bounds() const;
  bool is_convex() const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<Point2> vertices_;
  bool care_ = true;
};

/// Shoelace area; strictly positive for a valid polygon.
double area(const Polygon& poly);

/// Area-weighted centroid.
Point2 centroid(const Polygon& poly);

/// Even-odd point containment.
bool contains(const Polygon& poly, Point2 p);

Polygon rect_to_polygon(const Rect& r);

Polygon translate(const Polygon& poly, Point2 offset);
Polygon rotate_about(const Polygon& poly, Point2 pivot, double angle);

inline constexpr int kDefaultIouResolution = 4;

/// Intersection-over-union by scanline rasterization of both polygons on a
/// shared grid with `resolution` samples per pixel (even-odd fill). When
/// neither polygon covers a single sample the grid is refined until one does.
double iou(const Polygon& a, const Polygon& b, int resolution = kDefaultIouResolution);

/// Exact intersection area when at least one operand is convex (the other is
/// clipped against it); nullopt otherwise.
std::optional<double> intersection_area_exact(const Polygon& a, const Polygon& b);

/// Exact IoU when one operand is convex, rasterized IoU at `resolution`
/// otherwise.
double iou_best(const Polygon& a, const Polygon& b, int resolution = 8);

}  // namespace pointpoly
