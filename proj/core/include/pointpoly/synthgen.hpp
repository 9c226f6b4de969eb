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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "pointpoly/annotation.hpp"
#include "pointpoly/geometry.hpp"
#include "pointpoly/raster.hpp"
#include "pointpoly/recognizer.hpp"

namespace pointpoly {

/// One rendered word. Glyph cells are glyph_scale pixels per atlas cell with a
/// one-cell gap between characters; `origin` is the top-left of the unrotated
/// text box.
///   horizontal: cells laid out along +x
///   rotated:    the horizontal layout rotated by baseline.angle about origin
///   curved:     character k shifted down by amplitude * sin(2 pi xk / period),
///               xk being the cell center's offset from origin; glyphs stay upright
struct TextInstance {
  std::string text;
  BaselineInfo baseline{"horizontal"};
  Point2 origin;
  double glyph_scale = 3.0;
};

struct SceneSpec {
  int width = 320;
  int height = 240;
  std::vector<TextInstance> instances;
  double noise_sigma = 0.0;
  std::uint64_t noise_seed = 0;
};

struct GroundTruth {
  /// Ten upper and ten lower samples of the glyph-cell envelope.
  Polygon polygon;
  Point2 center;  // polygon centroid
  std::string text;
  /// Per-character intervals along the text direction (offsets from origin),
  /// inter-character gaps split at their midpoint.
  std::vector<Interval> char_spans;
  /// The same intervals as image-space x extents.
  std::vector<Interval> char_x_extents;
  BaselineInfo baseline;
};

struct RenderedScene {
  GrayImage image;
  std::vector<GroundTruth> truths;
};

/// Ink 1 on background 0, nearest-neighbour glyph sampling at pixel centers,
/// then optional Gaussian noise. Intensities are quantized to 1/255 so the
/// image survives a PGM round trip unchanged. Throws InstanceOutOfCanvas and
/// UnknownCharacter.
RenderedScene render(const SceneSpec& spec, const GlyphAtlas& atlas = GlyphAtlas::builtin());

/// Ground truth of one instance without rendering it.
GroundTruth layout_instance(const TextInstance& inst, const GlyphAtlas& atlas = GlyphAtlas::builtin());

enum class CorpusProfile { Horizontal, Mixed, Curved };

/// "horizontal", "mixed" or "curved"; ConfigError otherwise.
CorpusProfile parse_profile(const std::string& name);
std::string profile_name(CorpusProfile profile);

struct CorpusOptions {
  int width = 320;
  int height = 240;
  double noise_sigma = 0.0;
  int min_instances = 1;
  int max_instances = 3;
  double min_scale = 1.5;
  double max_scale = 5.0;
  int min_length = 3;
  int max_length = 10;
};

struct SyntheticScene {
  SceneSpec spec;
  RenderedScene rendered;
  AnnotationRecord record;
};

/// Scene i is drawn from seed ^ i, so corpora are reproducible and prefixes
/// of a larger corpus agree with smaller ones.
std::vector<SyntheticScene> make_corpus(std::size_t count, CorpusProfile profile,
                                        std::uint64_t seed, const CorpusOptions& options = {},
                                        const GlyphAtlas& atlas = GlyphAtlas::builtin());
SyntheticScene make_scene(std::uint64_t scene_seed, CorpusProfile profile,
                          const CorpusOptions& options = {},
                          const GlyphAtlas& atlas = GlyphAtlas::builtin());

/// Writes scene_00000.pgm ... and manifest.json into `dir` (created if needed).
void write_corpus(const std::vector<SyntheticScene>& scenes, const std::filesystem::path& dir);

Manifest corpus_manifest(const std::vector<SyntheticScene>& scenes);

/// Portable draws from raw mt19937_64 output (the standard distributions are
/// implementation-defined).
double uniform01(std::mt19937_64& rng);
double uniform_real(std::mt19937_64& rng, double lo, double hi);
int uniform_int(std::mt19937_64& rng, int lo, int hi);
double standard_normal(std::mt19937_64& rng);

}  // namespace pointpoly
