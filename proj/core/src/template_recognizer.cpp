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

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "pointpoly/recognizer.hpp"

namespace pointpoly {

double otsu_threshold(const GrayImage& img) {
  std::array<double, 256> hist{};
  for (double v : img.data()) {
    hist[static_cast<std::size_t>(std::clamp(std::lround(v * 255.0), 0L, 255L))] += 1.0;
  }
  const double total = static_cast<double>(img.data().size());
  double sum_all = 0.0;
  for (int i = 0; i < 256; ++i) sum_all += i * hist[i];

  double weight_bg = 0.0;
  double sum_bg = 0.0;
  double best_var = -1.0;
  int best = 0;
  for (int t = 0; t < 256; ++t) {
    weight_bg += hist[t];
    if (weight_bg == 0.0) continue;
    const double weight_fg = total - weight_bg;
    if (weight_fg == 0.0) break;
    sum_bg += t * hist[t];
    const double mean_bg = sum_bg / weight_bg;
    const double mean_fg = (sum_all - sum_bg) / weight_fg;
    const double between = weight_bg * weight_fg * (mean_bg - mean_fg) * (mean_bg - mean_fg);
    if (between > best_var) {
      best_var = between;
      best = t;
    }
  }
  // Pixels strictly above the returned level are foreground.
  return (best + 0.5) / 255.0;
}

namespace {

// Ink of one atlas row band, accumulated along x so it integrates over
// fractional column ranges.
class RowProfile {
 public:
  explicit RowProfile(std::vector<double> column_ink) : prefix_(column_ink.size() + 1, 0.0) {
    for (std::size_t x = 0; x < column_ink.size(); ++x) prefix_[x + 1] = prefix_[x] + column_ink[x];
  }

  double integral(double a, double b) const { return at(b) - at(a); }

 private:
  double at(double t) const {
    const double w = static_cast<double>(prefix_.size() - 1);
    t = std::clamp(t, 0.0, w);
    const auto i = static_cast<std::size_t>(t);
    if (i + 1 >= prefix_.size()) return prefix_.back();
    return prefix_[i] + (t - static_cast<double>(i)) * (prefix_[i + 1] - prefix_[i]);
  }

  std::vector<double> prefix_;
};

}  // namespace

TemplateRecognizer::TemplateRecognizer(const GlyphAtlas& atlas, TemplateConfig config)
    : config_(config), glyph_rows_(atlas.glyph_height()), glyph_cols_(atlas.glyph_width()) {
  if (config_.canonical_height < 4) {
    throw std::invalid_argument("template recognizer: canonical height must be at least 4");
  }
  template_width_ = std::max(
      1, static_cast<int>(std::lround(static_cast<double>(glyph_cols_) * config_.canonical_height /
                                      glyph_rows_)));
  for (const auto& [symbol, bitmap] : atlas.glyphs()) {
    Template t{symbol, {}};
    for (unsigned char b : bitmap) t.cells.push_back(b ? 1.0 : 0.0);
    templates_.push_back(std::move(t));
  }
}

RecognitionResult TemplateRecognizer::recognize(const PlacedCrop& crop) const {
  return recognize_image(crop.pixels);
}

RecognitionResult TemplateRecognizer::recognize_image(const GrayImage& crop) const {
  const int h = config_.canonical_height;
  const int tw = template_width_;
  const int blank_width = std::max(
      1, static_cast<int>(std::lround(static_cast<double>(crop.width()) * h / crop.height())));
  const auto [lo, hi] = std::minmax_element(crop.data().begin(), crop.data().end());
  if (*hi - *lo < config_.min_contrast) return empty_recognition(blank_width);
  const double thr = otsu_threshold(crop);

  // Rows holding ink; their extent sets the glyph scale.
  int first_row = -1;
  int last_row = -1;
  for (int y = 0; y < crop.height(); ++y) {
    for (int x = 0; x < crop.width(); ++x) {
      if (crop.at(x, y) > thr) {
        if (first_row < 0) first_row = y;
        last_row = y;
        break;
      }
    }
  }
  if (first_row < 0) return empty_recognition(blank_width);
  const int band_height = last_row - first_row + 1;
  const double fill = std::pow(static_cast<double>(band_height) / crop.height(),
                               config_.vertical_fit_exponent);
  const double col_px = static_cast<double>(band_height) / h;
  const double cell = static_cast<double>(band_height) / glyph_rows_;
  // Only the central part of each atlas cell is read, which keeps uneven
  // nearest-neighbour scaling from bleeding neighbouring rows and columns in.
  constexpr double kCore = 0.5;
  const double core = kCore * cell;
  const double core_area = core * core;
  const int width =
      std::max(1, static_cast<int>(std::lround(static_cast<double>(crop.width()) / col_px)));

  std::vector<RowProfile> rows;
  for (int r = 0; r < glyph_rows_; ++r) {
    const double top = first_row + (r + 0.5) * cell - core / 2;
    const double bottom = top + core;
    std::vector<double> ink(crop.width(), 0.0);
    for (int y = static_cast<int>(std::floor(top)); y < std::ceil(bottom) && y <= last_row; ++y) {
      const double weight = std::min(bottom, y + 1.0) - std::max(top, static_cast<double>(y));
      if (weight <= 0.0) continue;
      for (int x = 0; x < crop.width(); ++x) {
        if (crop.at(x, y) > thr) ink[x] += weight;
      }
    }
    rows.emplace_back(std::move(ink));
  }

  // Ink per canonical column, in atlas-cell units.
  std::vector<double> column_ink(width, 0.0);
  for (int x = 0; x < width; ++x) {
    for (const RowProfile& row : rows) column_ink[x] += row.integral(x * col_px, (x + 1) * col_px);
    column_ink[x] /= core * cell;
    if (column_ink[x] < 1e-9) column_ink[x] = 0.0;
  }
  int first_ink = 0;
  while (first_ink < width && column_ink[first_ink] == 0.0) ++first_ink;
  if (first_ink == width) return empty_recognition(width);
  int last_ink = width - 1;
  while (column_ink[last_ink] == 0.0) --last_ink;

  // Ink closer to a side border than edge_margin band heights may continue
  // past it; confidence is cut by up to half.
  const double margin = std::min(first_ink, width - 1 - last_ink);
  const double context =
      config_.edge_margin > 0.0 ? 0.5 + 0.5 * std::min(1.0, margin / (config_.edge_margin * h)) : 1.0;

  // Placements with at least half the glyph inside the crop. Cells whose
  // column centre falls outside are left out of the correlation, which is then
  // scaled by the share of glyph columns inside and by how well the ink
  // masses agree.
  const int o_min = -(tw / 2);
  const int o_max = std::max(o_min, width - (tw + 1) / 2);
  const int offsets = o_max - o_min + 1;
  const int glyphs = static_cast<int>(templates_.size());
  const int ncells = glyph_rows_ * glyph_cols_;
  std::vector<double> corr(std::size_t(glyphs) * offsets, 0.0);
  std::vector<double> best(offsets, 0.0);
  std::vector<int> best_glyph(offsets, 0);
  std::vector<double> values(ncells);
  std::vector<char> inside(glyph_cols_);
  for (int k = 0; k < offsets; ++k) {
    const double x0 = (o_min + k) * col_px;
    int cols_in = 0;
    for (int c = 0; c < glyph_cols_; ++c) {
      const double center = x0 + (c + 0.5) * cell;
      inside[c] = center >= 0.0 && center <= crop.width();
      cols_in += inside[c];
    }
    if (cols_in == 0) continue;
    const double n = static_cast<double>(cols_in) * glyph_rows_;
    double sv = 0.0;
    double svv = 0.0;
    for (int r = 0; r < glyph_rows_; ++r) {
      for (int c = 0; c < glyph_cols_; ++c) {
        if (!inside[c]) continue;
        const double left = x0 + (c + 0.5) * cell - core / 2;
        const double v = rows[r].integral(left, left + core) / core_area;
        values[r * glyph_cols_ + c] = v;
        sv += v;
        svv += v * v;
      }
    }
    const double var_v = n * svv - sv * sv;
    if (var_v <= 1e-12) continue;
    const double share = static_cast<double>(cols_in) / glyph_cols_;
    for (int g = 0; g < glyphs; ++g) {
      const Template& t = templates_[g];
      double sx = 0.0;
      double sxv = 0.0;
      for (int i = 0; i < ncells; ++i) {
        if (!inside[i % glyph_cols_] || t.cells[i] == 0.0) continue;
        sx += 1.0;
        sxv += values[i];
      }
      const double var_x = n * sx - sx * sx;
      if (var_x <= 0.0) continue;
      // Correlation ignores amplitude; a sliver of ink must not pass for a glyph.
      const double mass = std::sqrt(std::min(sx, sv) / std::max(sx, sv));
      const double c =
          std::clamp((n * sxv - sx * sv) / std::sqrt(var_x * var_v), 0.0, 1.0) * share * mass;
      corr[std::size_t(g) * offsets + k] = c;
      if (c > best[k]) {
        best[k] = c;
        best_glyph[k] = g;
      }
    }
  }

  struct Decoded {
    int start;      // first column of the footprint (may be negative)
    int end;        // one past the last column
    char symbol;
    double confidence;
    int glyph;      // -1 for residual ink
    int offset;     // index into the offset table
  };
  std::vector<Decoded> decoded;

  // Strongest placements first; a placement is kept when its footprint stays
  // clear of every kept one, allowing for scale rounding.
  std::vector<int> order(offsets);
  for (int k = 0; k < offsets; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) { return best[l] > best[r]; });
  const int max_overlap = tw / 10;
  for (int k : order) {
    if (best[k] < config_.match_floor) break;
    const int o = o_min + k;
    bool clear = true;
    for (const Decoded& d : decoded) {
      if (std::min(d.end, o + tw) - std::max(d.start, o) > max_overlap) {
        clear = false;
        break;
      }
    }
    if (clear) decoded.push_back({o, o + tw, templates_[best_glyph[k]].symbol, best[k], best_glyph[k], k});
  }

  // Ink columns that no accepted glyph explains.
  std::vector<char> covered(width, 0);
  for (const Decoded& d : decoded) {
    for (int x = std::max(d.start - config_.coverage_slack, 0);
         x < std::min(d.end + config_.coverage_slack, width); ++x) {
      covered[x] = 1;
    }
  }
  double mean_ink = 0.0;
  for (const Template& t : templates_) {
    for (double v : t.cells) mean_ink += v;
  }
  const double min_ink = config_.min_residual_ink * mean_ink / glyphs;
  std::vector<Decoded> residual;
  for (int x = 0; x < width;) {
    if (covered[x] || column_ink[x] == 0.0) {
      ++x;
      continue;
    }
    int first = x;
    int last = x;
    double ink = 0.0;
    int gap = 0;
    for (; x < width && !covered[x]; ++x) {
      if (column_ink[x] != 0.0) {
        last = x;
        ink += column_ink[x];
        gap = 0;
      } else if (++gap > 2) {
        break;
      }
    }
    if (ink < min_ink) continue;
    double conf = 0.0;
    for (int k = 0; k < offsets; ++k) {
      const int center = o_min + k + tw / 2;
      if (center >= first && center <= last) conf = std::max(conf, best[k]);
    }
    residual.push_back({first, last + 1, '?', conf, -1, -1});
  }
  decoded.insert(decoded.end(), residual.begin(), residual.end());
  std::stable_sort(decoded.begin(), decoded.end(),
                   [](const Decoded& l, const Decoded& r) { return l.start < r.start; });

  RecognitionResult result;
  const int steps = static_cast<int>(decoded.size());
  result.attention = AttentionMap(steps + 1, width);
  std::vector<double> scores(width);
  for (int t = 0; t < steps; ++t) {
    const Decoded& d = decoded[t];
    result.text.push_back(d.symbol);
    result.char_confidences.push_back(d.confidence * fill * context);
    std::fill(scores.begin(), scores.end(), 0.0);
    if (d.glyph < 0) {
      for (int x = std::max(d.start, 0); x < std::min(d.end, width); ++x) scores[x] = 1.0;
    } else {
      // Best correlation of the chosen glyph among nearby placements covering each column.
      const int lo_k = std::max(0, d.offset - tw / 2);
      const int hi_k = std::min(offsets - 1, d.offset + tw / 2);
      for (int k = lo_k; k <= hi_k; ++k) {
        const double c = corr[std::size_t(d.glyph) * offsets + k];
        const int o = o_min + k;
        for (int x = std::max(o, 0); x < std::min(o + tw, width); ++x) {
          scores[x] = std::max(scores[x], c);
        }
      }
    }
    for (double& s : scores) s *= config_.attention_sharpness;
    const std::vector<double> row = attention_row(scores);
    std::copy(row.begin(), row.end(), result.attention.row(t).begin());
  }
  auto eos = result.attention.row(steps);
  std::fill(eos.begin(), eos.end(), 1.0 / width);
  return result;
}

}  // namespace pointpoly
