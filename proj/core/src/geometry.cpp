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

#include "pointpoly/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pointpoly/errors.hpp"

namespace pointpoly {

namespace {

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

double signed_area(const std::vector<Point2>& v) {
  double acc = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % n];
    acc += p.x * q.y - q.x * p.y;
  }
  return 0.5 * acc;
}

// Disjoint, sorted spans of a polygon on one horizontal scanline (even-odd).
void scanline_spans(const std::vector<Point2>& v, double y, std::vector<double>& xs,
                    std::vector<Interval>& out) {
  xs.clear();
  out.clear();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % n];
    if ((p.y > y) != (q.y > y)) {
      const double t = (y - p.y) / (q.y - p.y);
      xs.push_back(p.x + t * (q.x - p.x));
    }
  }
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 0; i + 1 < xs.size(); i += 2) {
    out.push_back({xs[i], xs[i + 1]});
  }
}

// Number of sample columns i with origin + (i + 0.5) / res inside [lo, hi).
long long samples_in(double lo, double hi, double origin, double res) {
  const double a = std::ceil((lo - origin) * res - 0.5);
  const double b = std::ceil((hi - origin) * res - 0.5);
  return b > a ? static_cast<long long>(b - a) : 0;
}

struct RasterCounts {
  long long a = 0;
  long long b = 0;
  long long both = 0;
};

RasterCounts raster_counts(const Polygon& pa, const Polygon& pb, const BoundingBox& box,
                           double res) {
  const double ox = std::floor(box.min_x * res) / res;
  const double oy = std::floor(box.min_y * res) / res;
  const auto rows = static_cast<long long>(std::ceil((box.max_y - oy) * res));

  RasterCounts counts;
  std::vector<double> xs;
  std::vector<Interval> spans_a;
  std::vector<Interval> spans_b;
  for (long long j = 0; j < rows; ++j) {
    const double y = oy + (static_cast<double>(j) + 0.5) / res;
    scanline_spans(pa.vertices(), y, xs, spans_a);
    scanline_spans(pb.vertices(), y, xs, spans_b);
    for (const auto& s : spans_a) counts.a += samples_in(s.lo, s.hi, ox, res);
    for (const auto& s : spans_b) counts.b += samples_in(s.lo, s.hi, ox, res);
    // Both span lists are sorted and disjoint: merge.
    std::size_t ia = 0;
    std::size_t ib = 0;
    while (ia < spans_a.size() && ib < spans_b.size()) {
      const double lo = std::max(spans_a[ia].lo, spans_b[ib].lo);
      const double hi = std::min(spans_a[ia].hi, spans_b[ib].hi);
      if (hi > lo) counts.both += samples_in(lo, hi, ox, res);
      if (spans_a[ia].hi < spans_b[ib].hi) {
        ++ia;
      } else {
        ++ib;
      }
    }
  }
  return counts;
}

std::vector<Point2> clip_convex(const std::vector<Point2>& subject,
                                const std::vector<Point2>& clip) {
  std::vector<Point2> output = subject;
  std::vector<Point2> input;
  const std::size_t m = clip.size();
  for (std::size_t e = 0; e < m && !output.empty(); ++e) {
    const Point2 c1 = clip[e];
    const Point2 c2 = clip[(e + 1) % m];
    const Point2 dir = c2 - c1;
    auto side = [&](Point2 p) { return cross(dir, p - c1); };
    input.swap(output);
    output.clear();
    const std::size_t n = input.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 cur = input[i];
      const Point2 prev = input[(i + n - 1) % n];
      const double sc = side(cur);
      const double sp = side(prev);
      if (sc >= 0.0) {
        if (sp < 0.0) {
          const double t = sp / (sp - sc);
          output.push_back(prev + t * (cur - prev));
        }
        output.push_back(cur);
      } else if (sp >= 0.0) {
        const double t = sp / (sp - sc);
        output.push_back(prev + t * (cur - prev));
      }
    }
  }
  return output;
}

}  // namespace

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Rect Rect::from_corner(double x, double y, double width, double height) {
  return Rect{x + 0.5 * width, y + 0.5 * height, width, height, 0.0};
}

Polygon::Polygon(std::vector<Point2> vertices, bool care) : care_(care) {
  for (const Point2& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidPolygon("polygon vertex is not finite");
    }
    if (vertices_.empty() || !(vertices_.back() == p)) vertices_.push_back(p);
  }
  while (vertices_.size() > 1 && vertices_.front() == vertices_.back()) vertices_.pop_back();
  if (vertices_.size() < 3) {
    throw InvalidPolygon("polygon needs at least 3 distinct vertices");
  }
  const double a = signed_area(vertices_);
  if (!(std::abs(a) > 1e-12)) {
    throw InvalidPolygon("polygon has zero area");
  }
  if (a < 0.0) std::reverse(vertices_.begin(), vertices_.end());
}

std::optional<Polygon> Polygon::try_make(std::vector<Point2> vertices, bool care) {
  try {
    return Polygon(std::move(vertices), care);
  } catch (const InvalidPolygon&) {
    return std::nullopt;
  }
}

BoundingBox Polygon::bounds() const {
  BoundingBox b{vertices_[0].x, vertices_[0].y, vertices_[0].x, vertices_[0].y};
  for (const Point2& p : vertices_) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

bool Polygon::is_convex() const {
  const std::size_t n = vertices_.size();
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e1 = vertices_[(i + 1) % n] - vertices_[i];
    const Point2 e2 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    const double c = cross(e1, e2);
    const double scale = std::hypot(e1.x, e1.y) * std::hypot(e2.x, e2.y);
    if (c < -1e-12 * scale) return false;
    turning += std::atan2(c, e1.x * e2.x + e1.y * e2.y);
  }
  // A star polygon turns left everywhere but winds more than once.
  return std::abs(turning - 2.0 * std::numbers::pi) < 1e-6;
}

double area(const Polygon& poly) { return std::abs(signed_area(poly.vertices())); }

Point2 centroid(const Polygon& poly) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  double a = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % n];
    const double w = p.x * q.y - q.x * p.y;
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  a *= 0.5;
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

bool contains(const Polygon& poly, Point2 p) {
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double x = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

Polygon rect_to_polygon(const Rect& r) {
  const double hw = 0.5 * r.width;
  const double hh = 0.5 * r.height;
  const double c = std::cos(r.angle);
  const double s = std::sin(r.angle);
  const Point2 corners[4] = {{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}};
  std::vector<Point2> out;
  out.reserve(4);
  for (const Point2& k : corners) {
    out.push_back({r.cx + c * k.x - s * k.y, r.cy + s * k.x + c * k.y});
  }
  return Polygon(std::move(out));
}

Polygon translate(const Polygon& poly, Point2 offset) {
  std::vector<Point2> out;
  out.reserve(poly.size());
  for (const Point2& p : poly.vertices()) out.push_back(p + offset);
  return Polygon(std::move(out), poly.care());
}

Polygon rotate_about(const Polygon& poly, Point2 pivot, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<Point2> out;
  out.reserve(poly.size());
  for (const Point2& p : poly.vertices()) {
    const Point2 d = p - pivot;
    out.push_back({pivot.x + c * d.x - s * d.y, pivot.y + s * d.x + c * d.y});
  }
  return Polygon(std::move(out), poly.care());
}

double iou(const Polygon& a, const Polygon& b, int resolution) {
  const BoundingBox ba = a.bounds();
  const BoundingBox bb = b.bounds();
  const BoundingBox box{std::min(ba.min_x, bb.min_x), std::min(ba.min_y, bb.min_y),
                        std::max(ba.max_x, bb.max_x), std::max(ba.max_y, bb.max_y)};
  double res = std::max(1, resolution);
  constexpr double kMaxSamples = 1 << 24;
  for (;;) {
    const RasterCounts c = raster_counts(a, b, box, res);
    const long long uni = c.a + c.b - c.both;
    if (c.a > 0 && c.b > 0) return static_cast<double>(c.both) / static_cast<double>(uni);
    // One operand fell between samples; refine the grid while affordable.
    const double next = 2.0 * res;
    const double samples =
        (box.max_x - box.min_x + 2.0) * (box.max_y - box.min_y + 2.0) * next * next;
    if (samples > kMaxSamples) {
      return uni > 0 ? static_cast<double>(c.both) / static_cast<double>(uni) : 0.0;
    }
    res = next;
  }
}

std::optional<double> intersection_area_exact(const Polygon& a, const Polygon& b) {
  const Polygon* clip = nullptr;
  const Polygon* subject = nullptr;
  if (a.is_convex()) {
    clip = &a;
    subject = &b;
  } else if (b.is_convex()) {
    clip = &b;
    subject = &a;
  } else {
    return std::nullopt;
  }
  const std::vector<Point2> out = clip_convex(subject->vertices(), clip->vertices());
  if (out.size() < 3) return 0.0;
  return std::abs(signed_area(out));
}

double iou_best(const Polygon& a, const Polygon& b, int resolution) {
  if (const auto inter = intersection_area_exact(a, b)) {
    const double uni = area(a) + area(b) - *inter;
    if (!(uni > 0.0)) return 0.0;
    return std::clamp(*inter / uni, 0.0, 1.0);
  }
  return iou(a, b, resolution);
}

}  // namespace pointpoly
