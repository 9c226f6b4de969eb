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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pointpoly/errors.hpp"
#include "pointpoly/pgm.hpp"
#include "pointpoly/synthgen.hpp"

using namespace pointpoly;

namespace {

GrayImage smooth_image(int w, int h) {
  GrayImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      img.set(x, y, 0.5 + 0.4 * std::sin(x * 0.21) * std::cos(y * 0.17));
  return img;
}

BoundaryPolygon boundary_of(const Polygon& ring) {
  BoundaryPolygon b;
  const auto& v = ring.vertices();
  for (int i = 0; i < kContourPoints; ++i) {
    b.upper[i] = v[i];
    b.lower[i] = v[2 * kContourPoints - 1 - i];
  }
  return b;
}

BoundaryPolygon dilate_vertically(BoundaryPolygon b, double d) {
  for (auto& p : b.upper) p.y -= d;
  for (auto& p : b.lower) p.y += d;
  return b;
}

// Horizontal single-word scenes with the word's ground truth.
std::vector<std::pair<GrayImage, GroundTruth>> horizontal_words(int count, std::uint64_t seed) {
  std::vector<std::pair<GrayImage, GroundTruth>> out;
  std::mt19937_64 rng(seed);
  while (static_cast<int>(out.size()) < count) {
    TextInstance inst;
    const int len = uniform_int(rng, 3, 7);
    for (int k = 0; k < len; ++k) inst.text.push_back("ABCDEFGHJKLMNPRSTUVWXYZ0123456789"[uniform_int(rng, 0, 32)]);
    inst.glyph_scale = uniform_real(rng, 2.0, 4.0);
    inst.origin = {uniform_real(rng, 10, 60), uniform_real(rng, 20, 120)};
    SceneSpec spec;
    spec.instances.push_back(inst);
    RenderedScene scene = render(spec);
    out.emplace_back(std::move(scene.image), scene.truths[0]);
  }
  return out;
}

double second_difference_max(const std::array<Point2, kContourPoints>& now,
                              const std::array<Point2, kContourPoints>& before) {
  double worst = 0.0;
  for (int i = 1; i + 1 < kContourPoints; ++i) {
    const double d0 = now[i - 1].y - before[i - 1].y;
    const double d1 = now[i].y - before[i].y;
    const double d2 = now[i + 1].y - before[i + 1].y;
    worst = std::max(worst, std::abs(d0 - 2 * d1 + d2));
  }
  return worst;
}

}  // namespace

TEST(SampleBoundary, EvenSpacing) {
  const BoundaryPolygon b = sample_boundary({4.5, 1, 9, 2, 0});
  for (int i = 0; i < kContourPoints; ++i) {
    EXPECT_NEAR(b.upper[i].x, i, 1e-12);
    EXPECT_NEAR(b.upper[i].y, 0.0, 1e-12);
    EXPECT_NEAR(b.lower[i].x, i, 1e-12);
    EXPECT_NEAR(b.lower[i].y, 2.0, 1e-12);
  }
}

TEST(SampleBoundary, UnitWidth) {
  const BoundaryPolygon b = sample_boundary({3, 3, 1, 2, 0});
  for (int i = 1; i < kContourPoints; ++i) {
    EXPECT_NEAR(b.upper[i].x - b.upper[i - 1].x, 1.0 / 9.0, 1e-12);
  }
}

TEST(SampleBoundary, RotationEquivariant) {
  const Rect r{20, 10, 12, 4, 0};
  Rect turned = r;
  turned.angle = std::numbers::pi / 2;
  const BoundaryPolygon flat = sample_boundary(r);
  const BoundaryPolygon rot = sample_boundary(turned);
  auto turn = [&](Point2 p) {
    return Point2{r.cx - (p.y - r.cy), r.cy + (p.x - r.cx)};
  };
  for (int i = 0; i < kContourPoints; ++i) {
    EXPECT_NEAR(rot.upper[i].x, turn(flat.upper[i]).x, 1e-9);
    EXPECT_NEAR(rot.upper[i].y, turn(flat.upper[i]).y, 1e-9);
    EXPECT_NEAR(rot.lower[i].x, turn(flat.lower[i]).x, 1e-9);
    EXPECT_NEAR(rot.lower[i].y, turn(flat.lower[i]).y, 1e-9);
  }
}

TEST(BoundaryPolygonTest, PolygonOrderAndLength) {
  const BoundaryPolygon b = sample_boundary(Rect::from_corner(0, 0, 90, 10));
  const Polygon p = b.as_polygon();
  EXPECT_NEAR(area(p), 900.0, 1e-9);
  EXPECT_NEAR(b.mean_contour_length(), 90.0, 1e-9);
  EXPECT_EQ(rectified_width(b), 288);
  EXPECT_EQ(rectified_width(sample_boundary(Rect::from_corner(0, 0, 5, 40))), 32);
  EXPECT_EQ(rectified_width(sample_boundary(Rect::from_corner(0, 0, 4000, 10))), kMaxRectifiedWidth);
}

TEST(Rectify, AxisAlignedEqualsCrop) {
  const GrayImage img = smooth_image(80, 50);
  const Rect r = Rect::from_corner(10, 8, 40, 16);
  const GrayImage warped = rectify_crop(img, sample_boundary(r), 40, 16);
  const GrayImage crop = crop_axis_aligned(img, r);
  ASSERT_EQ(warped.width(), crop.width());
  ASSERT_EQ(warped.height(), crop.height());
  for (std::size_t i = 0; i < crop.data().size(); ++i) {
    EXPECT_NEAR(warped.data()[i], crop.data()[i], 1.0 / 255);
  }
}

TEST(Rectify, HalfSizeMatchesBilinearDownsample) {
  const GrayImage img = smooth_image(80, 50);
  const Rect r = Rect::from_corner(10, 8, 40, 16);
  const GrayImage warped = rectify_crop(img, sample_boundary(r), 20, 8);
  const GrayImage crop = crop_axis_aligned(img, r);
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 20; ++i) {
      const double expect = sample_bilinear(crop, (i + 0.5) * 2 - 0.5, (j + 0.5) * 2 - 0.5);
      EXPECT_NEAR(warped.at(i, j), expect, 2.0 / 255);
    }
  }
}

TEST(Rectify, CurvedBoundaryBeatsBoundingBox) {
  SceneSpec spec;
  spec.instances.push_back({"CURVED", {"curved", 0, 6.0, 60.0}, {40, 60}, 3.0});
  const RenderedScene scene = render(spec);
  const GroundTruth& gt = scene.truths[0];
  OracleRecognizer oracle;
  oracle.register_instance(gt.polygon, gt.text, gt.char_x_extents);
  const BoundingBox bb = gt.polygon.bounds();
  const Rect box = Rect::from_corner(bb.min_x, bb.min_y, bb.max_x - bb.min_x, bb.max_y - bb.min_y);
  const double bent = rectified_score(scene.image, boundary_of(gt.polygon), oracle);
  const double straight = rectified_score(scene.image, sample_boundary(box), oracle);
  EXPECT_GE(bent, straight);
  EXPECT_LT(straight, 1.0);
}

TEST(Rectify, ControlPointsLandOnRectangle) {
  const BoundaryPolygon b = dilate_vertically(sample_boundary(Rect::from_corner(5, 5, 50, 10)), 2.5);
  const TpsTransform fwd = boundary_to_rectangle(b, 64, 32);
  const auto cps = b.control_points();
  const auto rect = rectangle_control_points(64, 32);
  for (std::size_t i = 0; i < cps.size(); ++i) EXPECT_LE(distance(fwd(cps[i]), rect[i]), 1e-6);
}

TEST(RefineConfigTest, Validation) {
  RefineConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.max_rounds = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.initial_step = 0.25;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.smoothness_weight = -1;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Refine, GroundTruthInitUnchanged) {
  SceneSpec spec;
  spec.instances.push_back({"STILL", {"horizontal"}, {40, 60}, 3.0});
  const RenderedScene scene = render(spec);
  const BoundingBox bb = scene.truths[0].polygon.bounds();
  const Rect box = Rect::from_corner(bb.min_x, bb.min_y, bb.max_x - bb.min_x, bb.max_y - bb.min_y);
  OracleRecognizer oracle;
  oracle.register_instance(rect_to_polygon(box), "STILL");
  const BoundaryPolygon init = sample_boundary(box);
  const RefineResult r = refine_boundary(scene.image, init, oracle, {});
  EXPECT_EQ(r.boundary, init);
  EXPECT_EQ(r.objective, r.initial_objective);
}

TEST(Refine, DilatedInitImproves) {
  for (const auto& [img, gt] : horizontal_words(20, 77)) {
    OracleRecognizer oracle;
    oracle.register_instance(gt.polygon, gt.text, gt.char_x_extents);
    const BoundaryPolygon init = dilate_vertically(boundary_of(gt.polygon), 4.0);
    const RefineResult r = refine_boundary(img, init, oracle, {});
    EXPECT_GE(r.objective, r.initial_objective);
    EXPECT_GE(iou_best(r.boundary.as_polygon(), gt.polygon) + 1e-12,
              iou_best(init.as_polygon(), gt.polygon));
  }
}

TEST(Refine, HugeSmoothnessKeepsConstantShift) {
  const auto words = horizontal_words(3, 5);
  for (const auto& [img, gt] : words) {
    OracleRecognizer oracle;
    oracle.register_instance(gt.polygon, gt.text, gt.char_x_extents);
    const BoundaryPolygon init = dilate_vertically(boundary_of(gt.polygon), 4.0);
    RefineConfig cfg;
    cfg.smoothness_weight = 1e9;
    const RefineResult r = refine_boundary(img, init, oracle, cfg);
    EXPECT_LE(second_difference_max(r.boundary.upper, init.upper), 1e-9);
    EXPECT_LE(second_difference_max(r.boundary.lower, init.lower), 1e-9);
  }
}

TEST(Refine, DeterministicAndMonotone) {
  const auto words = horizontal_words(5, 9);
  const TemplateRecognizer rec;
  for (const auto& [img, gt] : words) {
    const BoundingBox bb = gt.polygon.bounds();
    const BoundaryPolygon init = sample_boundary(
        Rect::from_corner(bb.min_x - 3, bb.min_y - 6, bb.max_x - bb.min_x + 6, bb.max_y - bb.min_y + 9));
    RefineConfig cfg;
    cfg.rng_seed = 42;
    const RefineResult a = refine_boundary(img, init, rec, cfg);
    const RefineResult b = refine_boundary(img, init, rec, cfg);
    EXPECT_EQ(a.boundary, b.boundary);
    EXPECT_EQ(a.objective, b.objective);
    EXPECT_GE(a.objective, a.initial_objective);
  }
}
