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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pointpoly/geometry.hpp"
#include "pointpoly/raster.hpp"

namespace pointpoly {

/// Row-major T x W matrix of attention weights; row t is the distribution of
/// decode step t over feature columns.
class AttentionMap {
 public:
  AttentionMap() = default;
  AttentionMap(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::span<double> row(int t) { return {data_.data() + std::size_t(t) * cols_, std::size_t(cols_)}; }
  std::span<const double> row(int t) const {
    return {data_.data() + std::size_t(t) * cols_, std::size_t(cols_)};
  }
  double at(int t, int i) const { return data_[std::size_t(t) * cols_ + i]; }
  double& at(int t, int i) { return data_[std::size_t(t) * cols_ + i]; }

  friend bool operator==(const AttentionMap&, const AttentionMap&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Decoded text with per-character confidences and one attention row per
/// decode step. The final row belongs to the end-of-sequence step, so
/// attention.rows() == text.size() + 1.
struct RecognitionResult {
  std::string text;
  std::vector<double> char_confidences;
  AttentionMap attention;

  int feature_width() const { return attention.cols(); }
};

/// A crop handed to a recognizer together with where it came from: the image
/// region it covers and the image-space x extent of each pixel column.
struct PlacedCrop {
  GrayImage pixels;
  Polygon region;
  std::vector<Interval> column_extents;
};

/// Mean of the per-character confidences; 0 for an empty decode.
double aggregate_confidence(const RecognitionResult& r);

/// Softmax of attention scores. Throws std::invalid_argument on empty input.
std::vector<double> attention_row(std::span<const double> scores);

/// Uniform single-row attention for an empty decode.
RecognitionResult empty_recognition(int feature_width);

class Recognizer {
 public:
  virtual ~Recognizer() = default;
  /// Deterministic for identical inputs.
  virtual RecognitionResult recognize(const PlacedCrop& crop) const = 0;
};

// ---------------------------------------------------------------------------

/// Binary glyph bitmaps for A-Z and 0-9 sharing one size.
class GlyphAtlas {
 public:
  /// Validates equal dimensions and distinct bitmaps (FormatError otherwise).
  GlyphAtlas(int glyph_height, int glyph_width, std::map<char, std::vector<unsigned char>> glyphs);

  /// The embedded 5x7 atlas.
  static const GlyphAtlas& builtin();
  static GlyphAtlas from_json(const std::string& text);
  static GlyphAtlas load(const std::filesystem::path& path);

  int glyph_height() const { return glyph_height_; }
  int glyph_width() const { return glyph_width_; }
  const std::map<char, std::vector<unsigned char>>& glyphs() const { return glyphs_; }

  /// Case-insensitive lookup; throws UnknownCharacter.
  const std::vector<unsigned char>& glyph(char c) const;
  bool contains(char c) const;
  bool ink(char c, int row, int col) const {
    return glyph(c)[std::size_t(row) * glyph_width_ + col] != 0;
  }

 private:
  int glyph_height_;
  int glyph_width_;
  std::map<char, std::vector<unsigned char>> glyphs_;
};

// ---------------------------------------------------------------------------

/// Test oracle. Confidence of every character equals the IoU between the crop
/// region and the best-overlapping registered ground truth; attention step t
/// is uniform over the crop columns whose x extent overlaps character t.
class OracleRecognizer final : public Recognizer {
 public:
  /// Character x spans default to an equal split of the polygon's x extent.
  void register_instance(const Polygon& gt, const std::string& text,
                         std::optional<std::vector<Interval>> char_spans = std::nullopt);

  RecognitionResult recognize(const PlacedCrop& crop) const override;

  std::size_t size() const { return instances_.size(); }

 private:
  struct Instance {
    Polygon polygon;
    std::string text;
    std::vector<Interval> spans;
  };
  std::vector<Instance> instances_;
};

// ---------------------------------------------------------------------------

struct TemplateConfig {
  int canonical_height = 32;
  double match_floor = 0.6;
  /// Scale applied to per-column correlations before the attention softmax.
  double attention_sharpness = 40.0;
  /// Crops whose intensity range is below this carry no ink.
  double min_contrast = 0.15;
  /// Unexplained ink lighter than this share of a mean template's ink is ignored.
  double min_residual_ink = 0.2;
  /// Columns this close to an accepted glyph's footprint count as explained by it.
  int coverage_slack = 3;
  /// Confidences are scaled by (ink band height / crop height) to this power.
  double vertical_fit_exponent = 1.0;
  /// Blank margin, in ink-band heights, below which side-border ink lowers confidence.
  double edge_margin = 0.25;
};

/// Correlation recognizer over a glyph atlas. The crop is Otsu-binarized and
/// the height of its band of inked rows fixes the glyph scale. At every
/// placement (one step per canonical column, the band resized to
/// canonical_height) the ink share of each atlas cell is correlated with every
/// glyph bitmap; decoding is greedy left to right. Attention rows live on the
/// canonical column grid. Ink
/// not explained by any accepted glyph becomes a '?' character carrying its
/// best (sub-floor) correlation. Confidences shrink with the share of the
/// crop height left empty above and below the ink, and when ink comes close
/// to the left or right border.
class TemplateRecognizer final : public Recognizer {
 public:
  explicit TemplateRecognizer(const GlyphAtlas& atlas = GlyphAtlas::builtin(),
                              TemplateConfig config = {});

  RecognitionResult recognize(const PlacedCrop& crop) const override;
  RecognitionResult recognize_image(const GrayImage& crop) const;

  const TemplateConfig& config() const { return config_; }
  int template_width() const { return template_width_; }

 private:
  struct Template {
    char symbol;
    std::vector<double> cells;  // row-major atlas bitmap, 0 or 1
  };

  TemplateConfig config_;
  int glyph_rows_;
  int glyph_cols_;
  int template_width_;
  std::vector<Template> templates_;
};

/// Otsu threshold of the intensity histogram (256 bins over [0,1]).
double otsu_threshold(const GrayImage& img);

}  // namespace pointpoly
