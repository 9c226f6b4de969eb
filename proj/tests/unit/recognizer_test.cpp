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
#include <numeric>
#include <random>

#include "pointpoly/agm.hpp"
#include "pointpoly/errors.hpp"
#include "pointpoly/recognizer.hpp"
#include "pointpoly/synthgen.hpp"

using namespace pointpoly;

namespace {

RecognitionResult with_confidences(std::vector<double> c) {
  RecognitionResult r;
  r.text.assign(c.size(), 'A');
  r.char_confidences = std::move(c);
  return r;
}

void expect_well_formed(const RecognitionResult& r) {
  ASSERT_EQ(r.char_confidences.size(), r.text.size());
  ASSERT_EQ(static_cast<std::size_t>(r.attention.rows()), r.text.size() + 1);
  for (double c : r.char_confidences) {
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
  }
  for (int t = 0; t < r.attention.rows(); ++t) {
    double sum = 0;
    for (double a : r.attention.row(t)) {
      EXPECT_GE(a, 0.0);
      sum += a;
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
}

// Word rendered on a blank canvas with `pad` pixels of background around it.
GrayImage word_crop(const std::string& text, double scale, double pad) {
  const GroundTruth gt = layout_instance({text, {"horizontal"}, {pad, pad}, scale});
  const BoundingBox b = gt.polygon.bounds();
  SceneSpec spec;
  spec.width = static_cast<int>(std::ceil(b.max_x + pad));
  spec.height = static_cast<int>(std::ceil(b.max_y + pad));
  spec.instances.push_back({text, {"horizontal"}, {pad, pad}, scale});
  return render(spec).image;
}

PlacedCrop place(const GrayImage& img, const Polygon& region) {
  const BoundingBox b = region.bounds();
  return place_axis_aligned(
      img, Rect::from_corner(b.min_x, b.min_y, b.max_x - b.min_x, b.max_y - b.min_y));
}

}  // namespace

TEST(AggregateConfidence, Examples) {
  EXPECT_NEAR(aggregate_confidence(with_confidences({0.9, 0.8, 1.0})), 0.9, 1e-12);
  EXPECT_EQ(aggregate_confidence(with_confidences({})), 0.0);
  EXPECT_EQ(aggregate_confidence(with_confidences({1.0})), 1.0);
}

TEST(AttentionRow, Examples) {
  const auto a = attention_row(std::vector<double>{0, 0});
  EXPECT_DOUBLE_EQ(a[0], 0.5);
  EXPECT_DOUBLE_EQ(a[1], 0.5);
  const auto b = attention_row(std::vector<double>{0, std::log(3.0)});
  EXPECT_NEAR(b[0], 0.25, 1e-12);
  EXPECT_NEAR(b[1], 0.75, 1e-12);
  EXPECT_THROW(attention_row(std::vector<double>{}), std::invalid_argument);
}

TEST(AttentionRow, ProbabilityVectorOrderPreserving) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(1 + trial % 17);
    for (double& v : s) v = trial % 2 ? u(rng) : u(rng) * 1e-5;
    const auto a = attention_row(s);
    EXPECT_NEAR(std::accumulate(a.begin(), a.end(), 0.0), 1.0, 1e-6);
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_GE(a[i], 0.0);
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[i] > s[j]) EXPECT_GE(a[i], a[j]);
      }
    }
  }
}

TEST(Oracle, OwnRegionIsExact) {
  GrayImage img(100, 60);
  const Rect box = Rect::from_corner(10, 20, 40, 12);
  OracleRecognizer oracle;
  oracle.register_instance(rect_to_polygon(box), "AB");
  const auto r = oracle.recognize(place_axis_aligned(img, box));
  EXPECT_EQ(r.text, "AB");
  EXPECT_EQ(r.char_confidences, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(aggregate_confidence(r), 1.0);
  expect_well_formed(r);
}

TEST(Oracle, DisjointIsEmpty) {
  GrayImage img(100, 60);
  OracleRecognizer oracle;
  oracle.register_instance(rect_to_polygon(Rect::from_corner(10, 20, 40, 12)), "AB");
  const auto r = oracle.recognize(place_axis_aligned(img, Rect::from_corner(60, 5, 20, 10)));
  EXPECT_EQ(r.text, "");
  EXPECT_EQ(aggregate_confidence(r), 0.0);
  expect_well_formed(r);
}

TEST(Oracle, LeftHalfAttention) {
  GrayImage img(100, 60);
  OracleRecognizer oracle;
  oracle.register_instance(rect_to_polygon(Rect::from_corner(10, 20, 40, 12)), "AB");
  const PlacedCrop crop = place_axis_aligned(img, Rect::from_corner(10, 20, 20, 12));
  const auto r = oracle.recognize(crop);
  ASSERT_EQ(r.text, "AB");
  expect_well_formed(r);
  const int w = r.feature_width();
  double first_in_span = 0;
  for (int i = 0; i < w; ++i) {
    if (crop.column_extents[i].overlaps({10, 30})) first_in_span += r.attention.at(0, i);
  }
  EXPECT_NEAR(first_in_span, 1.0, 1e-12);
  for (int i = 0; i < w; ++i) EXPECT_NEAR(r.attention.at(1, i), 1.0 / w, 1e-12);
  EXPECT_NEAR(r.char_confidences[0], 0.5, 1e-9);
}

TEST(Oracle, UnregisteredThrows) {
  OracleRecognizer oracle;
  EXPECT_THROW(oracle.recognize(place_axis_aligned(GrayImage(8, 8), {4, 4, 4, 4, 0})),
               OracleUnregistered);
}

TEST(Oracle, BestOverlapWins) {
  GrayImage img(200, 60);
  OracleRecognizer oracle;
  oracle.register_instance(rect_to_polygon(Rect::from_corner(10, 10, 40, 12)), "LEFT");
  oracle.register_instance(rect_to_polygon(Rect::from_corner(120, 10, 40, 12)), "RIGHT");
  const auto r = oracle.recognize(place_axis_aligned(img, Rect::from_corner(118, 9, 42, 14)));
  EXPECT_EQ(r.text, "RIGHT");
}

TEST(GlyphAtlasTest, Builtin) {
  const GlyphAtlas& atlas = GlyphAtlas::builtin();
  EXPECT_EQ(atlas.glyph_width(), 5);
  EXPECT_EQ(atlas.glyph_height(), 7);
  EXPECT_EQ(atlas.glyphs().size(), 36u);
  EXPECT_EQ(atlas.glyph('a'), atlas.glyph('A'));
  EXPECT_THROW(atlas.glyph('#'), UnknownCharacter);
}

TEST(GlyphAtlasTest, RejectsDuplicatesAndBadJson) {
  std::vector<unsigned char> bits(4, 1);
  EXPECT_THROW(GlyphAtlas(2, 2, {{'A', bits}, {'B', bits}}), FormatError);
  EXPECT_THROW(GlyphAtlas::from_json("{not json"), FormatError);
}

TEST(Template, ReadsHiAtNativeScale) {
  const GrayImage img = word_crop("HI", 1.0, 2.0);
  const TemplateRecognizer rec;
  const auto r = rec.recognize_image(img);
  EXPECT_EQ(r.text, "HI");
  expect_well_formed(r);
}

TEST(Template, ExactMatchCorrelatesFully) {
  // Glyph rows only, with side margins wide enough to keep the border factor at 1.
  const GrayImage page = word_crop("HI", 4.0, 8.0);
  const GrayImage img = crop_axis_aligned(page, Rect::from_corner(0, 8, page.width(), 28));
  const auto r = TemplateRecognizer().recognize_image(img);
  ASSERT_EQ(r.text, "HI");
  EXPECT_GT(r.char_confidences[0], 0.9);
  EXPECT_GT(r.char_confidences[1], 0.9);
}

TEST(Template, AllBlackIsEmpty) {
  const auto r = TemplateRecognizer().recognize_image(GrayImage(40, 20, 0.0));
  EXPECT_EQ(r.text, "");
  EXPECT_EQ(aggregate_confidence(r), 0.0);
  expect_well_formed(r);
}

TEST(Template, ScaleTolerant) {
  const GrayImage base = word_crop("K7W", 6.0, 6.0);
  const TemplateRecognizer rec;
  const std::string expect = rec.recognize_image(base).text;
  ASSERT_EQ(expect, "K7W");
  for (int h : {8, 10, 12, 16, 20, 24, 32, 48, 64, 96, 128, 180, 256}) {
    const int w = static_cast<int>(std::lround(double(base.width()) * h / base.height()));
    EXPECT_EQ(rec.recognize_image(resize_bilinear(base, w, h)).text, expect) << "height " << h;
  }
}

TEST(Template, ReadsWordsRenderedAtAnyHeight) {
  const TemplateRecognizer rec;
  for (const std::string text : {"K7W", "VNDHR", "MR8S4NFL0", "OQ607L", "WZMT82O"}) {
    for (int h = 8; h <= 256; h += h < 40 ? 1 : 9) {
      for (double margin : {0.0, 0.5}) {
        const double s = h / 7.0;
        SceneSpec spec;
        spec.width = static_cast<int>(std::ceil(s * (6 * text.size() - 1) + 2 * margin * h)) + 1;
        spec.height = h + 1;
        spec.instances.push_back({text, {"horizontal"}, {margin * h, 0}, s});
        EXPECT_EQ(rec.recognize_image(render(spec).image).text, text) << "height " << h;
      }
    }
  }
}

TEST(Template, WellFormedOnNoise) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const TemplateRecognizer rec;
  for (int trial = 0; trial < 20; ++trial) {
    GrayImage img(10 + trial * 7, 8 + trial * 3);
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x) img.set(x, y, u(rng));
    const auto r = rec.recognize_image(img);
    expect_well_formed(r);
    EXPECT_EQ(r.attention, rec.recognize_image(img).attention);
  }
}

TEST(Template, DecodesNoiseFreeTightCrops) {
  // Every horizontal corpus instance, cropped to its ground-truth box.
  const auto scenes = make_corpus(25, CorpusProfile::Horizontal, 314);
  const TemplateRecognizer rec;
  int total = 0;
  for (const auto& s : scenes) {
    for (const auto& gt : s.rendered.truths) {
      ++total;
      const auto r = rec.recognize(place(s.rendered.image, gt.polygon));
      EXPECT_EQ(r.text, gt.text) << s.record.image_path;
    }
  }
  EXPECT_GT(total, 25);
}
