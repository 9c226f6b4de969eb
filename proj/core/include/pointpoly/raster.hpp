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

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pointpoly/geometry.hpp"

namespace pointpoly {

/// Row-major grayscale raster with intensities in [0, 1]. Pixel (x, y) is
/// stored at data()[y * width + x] and is sampled exactly at integer
/// coordinates (x, y).
class GrayImage {
 public:
  /// Uniform image. Throws std::invalid_argument on zero dimensions or a fill
  /// value outside [0, 1].
  GrayImage(int width, int height, double fill = 0.0);
  GrayImage(int width, int height, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const double> data() const { return data_; }

  double at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  /// Stores clamp(v, 0, 1).
  void set(int x, int y, double v);

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<double> data_;
};

/// Bilinear interpolation between pixel centers; coordinates are clamped to
/// [0, width-1] x [0, height-1] first.
double sample_bilinear(const GrayImage& img, double x, double y);

/// Resamples the region covered by an axis-aligned rect (angle ignored) to a
/// round(width) x round(height) raster. Output pixel (i, j) samples
/// left + (i + 0.5) * sx - 0.5, so integer rects at unit pitch copy pixels
/// exactly. Regions past the border use clamped samples. Throws
/// DegenerateRect when the rect does not overlap the image.
GrayImage crop_axis_aligned(const GrayImage& img, const Rect& rect);

/// Bilinear resize to the given dimensions.
GrayImage resize_bilinear(const GrayImage& img, int width, int height);

/// Reads plain (P2) or raw (P5) PGM with maxval <= 255.
GrayImage read_image(const std::filesystem::path& path);
GrayImage parse_pgm(std::span<const unsigned char> bytes);

/// Writes raw P5, maxval 255.
void write_image(const GrayImage& img, const std::filesystem::path& path);
std::vector<unsigned char> encode_pgm(const GrayImage& img);

struct OverlayLayer {
  Polygon polygon;
  std::string stroke;  // SVG color, e.g. "green"
  std::string label;
  bool filled = false;
};

struct OverlayScene {
  const GrayImage* base = nullptr;
  int width = 0;   // canvas size when base is null
  int height = 0;
  std::vector<OverlayLayer> layers;
  bool embed_raster = true;
};

/// SVG 1.1 document: the base raster (8-bit BMP data URI) when present and
/// enabled, then one closed path per layer in declaration order.
std::string render_overlay_svg(const OverlayScene& scene);
void emit_overlay_svg(const OverlayScene& scene, const std::filesystem::path& path);

}  // namespace pointpoly
