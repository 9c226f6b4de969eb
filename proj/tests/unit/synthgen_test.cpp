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
#include <filesystem>
#include <numbers>

#include "pointpoly/errors.hpp"
#include "pointpoly/synthgen.hpp"

using namespace pointpoly;

TEST(Render, HiAtUnitScaleIsTheAtlas) {
  const GlyphAtlas& atlas = GlyphAtlas::builtin();
  SceneSpec spec;
  spec.width = 40;
  spec.height = 30;
  spec.instances.push_back({"HI", {"horizontal"}, {10, 10}, 1.0});
  const RenderedScene scene = render(spec);
  for (int y = 0; y < 30; ++y) {
    for (int x = 0; x < 40; ++x) {
      double expect = 0.0;
      const int row = y - 10;
      if (row >= 0 && row < 7) {
        if (x >= 10 && x < 15 && atlas.ink('H', row, x - 10)) expect = 1.0;
        if (x >= 16 && x < 21 && atlas.ink('I', row, x - 16)) expect = 1.0;
      }
      EXPECT_EQ(scene.image.at(x, y), expect) << x << "," << y;
    }
  }
  ASSERT_EQ(scene.truths.size(), 1u);
  const auto& v = scene.truths[0].polygon.vertices();
  ASSERT_EQ(v.size(), 20u);
  for (int j = 0; j < 10; ++j) {
    EXPECT_NEAR(v[j].x, 10 + 11.0 * j / 9, 1e-12);
    EXPECT_NEAR(v[j].y, 10.0, 1e-12);
    EXPECT_NEAR(v[19 - j].x, 10 + 11.0 * j / 9, 1e-12);
    EXPECT_NEAR(v[19 - j].y, 17.0, 1e-12);
  }
}

TEST(Render, RotationEquivariant) {
  const Point2 origin{100, 80};
  const double angle = std::numbers::pi / 6;
  const GroundTruth flat = layout_instance({"ROTATE", {"horizontal"}, origin, 2.5});
  const GroundTruth turned = layout_instance({"ROTATE", {"rotated", angle}, origin, 2.5});
  const Polygon expect = rotate_about(flat.polygon, origin, angle);
  ASSERT_EQ(expect.size(), turned.polygon.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    EXPECT_NEAR(expect.vertices()[i].x, turned.polygon.vertices()[i].x, 1e-6);
    EXPECT_NEAR(expect.vertices()[i].y, turned.polygon.vertices()[i].y, 1e-6);
  }
}

TEST(Render, CurvedOffsetsFollowSine) {
  const double amplitude = 4, period = 60, scale = 2;
  const Point2 origin{20, 30};
  SceneSpec spec;
  spec.width = 120;
  spec.instances.push_back({"ABCDEF", {"curved", 0, amplitude, period}, origin, scale});
  const RenderedScene scene = render(spec);
  const double cell_w = 5 * scale;
  const double advance = cell_w + scale;
  for (int k = 0; k < 6; ++k) {
    const double center = k * advance + cell_w / 2;
    const double drop = amplitude * std::sin(2 * std::numbers::pi * center / period);
    int top = scene.image.height();
    for (int x = static_cast<int>(origin.x + k * advance);
         x < static_cast<int>(origin.x + k * advance + cell_w); ++x) {
      for (int y = 0; y < scene.image.height(); ++y) {
        if (scene.image.at(x, y) > 0.5) {
          top = std::min(top, y);
          break;
        }
      }
    }
    EXPECT_EQ(top, static_cast<int>(std::ceil(origin.y + drop - 0.5))) << "char " << k;
  }
}

TEST(Render, CharSpansTileTheWord) {
  const GroundTruth gt = layout_instance({"SPANS", {"horizontal"}, {5, 5}, 3.0});
  ASSERT_EQ(gt.char_spans.size(), 5u);
  EXPECT_DOUBLE_EQ(gt.char_spans.front().lo, 0.0);
  EXPECT_DOUBLE_EQ(gt.char_spans.back().hi, 5 * 18.0 - 3.0);
  for (std::size_t k = 1; k < 5; ++k) {
    EXPECT_DOUBLE_EQ(gt.char_spans[k].lo, gt.char_spans[k - 1].hi);
    EXPECT_FALSE(gt.char_spans[k].overlaps(gt.char_spans[k - 1]));
  }
}

TEST(Render, Errors) {
  SceneSpec spec;
  spec.width = 30;
  spec.height = 20;
  spec.instances.push_back({"TOOLONG", {"horizontal"}, {5, 5}, 2.0});
  EXPECT_THROW(render(spec), InstanceOutOfCanvas);
  spec.instances = {{"A#", {"horizontal"}, {1, 1}, 1.0}};
  EXPECT_THROW(render(spec), UnknownCharacter);
}

TEST(Render, NoiseIsQuantized) {
  SceneSpec spec;
  spec.instances.push_back({"NOISE", {"horizontal"}, {20, 20}, 2.0});
  spec.noise_sigma = 0.05;
  spec.noise_seed = 3;
  const RenderedScene scene = render(spec);
  bool any_mid = false;
  for (double v : scene.image.data()) {
    EXPECT_NEAR(v * 255, std::round(v * 255), 1e-9);
    any_mid = any_mid || (v > 0 && v < 1);
  }
  EXPECT_TRUE(any_mid);
  EXPECT_EQ(render(spec).image, scene.image);
}

TEST(Corpus, DeterministicAndSized) {
  const auto a = make_corpus(10, CorpusProfile::Horizontal, 7);
  const auto b = make_corpus(10, CorpusProfile::Horizontal, 7);
  ASSERT_EQ(a.size(), 10u);
  EXPECT_EQ(corpus_manifest(a).size(), 10u);
  EXPECT_EQ(serialize_manifest(corpus_manifest(a)), serialize_manifest(corpus_manifest(b)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(encode_pgm(a[i].rendered.image), encode_pgm(b[i].rendered.image));
  }
}

TEST(Corpus, SeedMatters) {
  const auto a = make_corpus(5, CorpusProfile::Mixed, 7);
  const auto b = make_corpus(5, CorpusProfile::Mixed, 8);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs |= !(a[i].rendered.image == b[i].rendered.image);
  EXPECT_TRUE(differs);
}

TEST(Corpus, PrefixStable) {
  const auto small = make_corpus(3, CorpusProfile::Curved, 11);
  const auto large = make_corpus(6, CorpusProfile::Curved, 11);
  for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small[i].record, large[i].record);
}

TEST(Corpus, CurvedHasAmplitude) {
  for (const auto& s : make_corpus(20, CorpusProfile::Curved, 5)) {
    for (const auto& inst : s.record.instances) {
      ASSERT_TRUE(inst.baseline.has_value());
      EXPECT_EQ(inst.baseline->kind, "curved");
      EXPECT_NE(inst.baseline->amplitude, 0.0);
    }
  }
}

TEST(Corpus, PolygonsCoverInkAndCentroids) {
  for (CorpusProfile profile :
       {CorpusProfile::Horizontal, CorpusProfile::Mixed, CorpusProfile::Curved}) {
    for (const auto& s : make_corpus(15, profile, 23)) {
      const GrayImage& img = s.rendered.image;
      for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
          if (img.at(x, y) < 0.5) continue;
          bool covered = false;
          for (const auto& gt : s.rendered.truths) covered |= contains(gt.polygon, {x + 0.5, y + 0.5});
          EXPECT_TRUE(covered) << profile_name(profile) << " " << x << "," << y;
        }
      }
      for (const auto& gt : s.rendered.truths) EXPECT_TRUE(contains(gt.polygon, gt.center));
    }
  }
}

TEST(Corpus, Profiles) {
  EXPECT_EQ(parse_profile("mixed"), CorpusProfile::Mixed);
  EXPECT_EQ(profile_name(CorpusProfile::Curved), "curved");
  EXPECT_THROW(parse_profile("spiral"), ConfigError);
}

TEST(Corpus, WriteAndReload) {
  const auto dir = std::filesystem::temp_directory_path() / "pointpoly_synth_write";
  std::filesystem::remove_all(dir);
  const auto scenes = make_corpus(3, CorpusProfile::Mixed, 2);
  write_corpus(scenes, dir);
  const Manifest m = load_manifest(dir / "manifest.json");
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0].image_path, "scene_00000.pgm");
  EXPECT_EQ(read_image(dir / m[2].image_path), scenes[2].rendered.image);
  std::filesystem::remove_all(dir);
}

TEST(Rng, PortableDraws) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const int k = uniform_int(rng, -3, 4);
    EXPECT_GE(k, -3);
    EXPECT_LE(k, 4);
    EXPECT_TRUE(std::isfinite(standard_normal(rng)));
  }
}
