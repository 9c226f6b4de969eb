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

#include "pointpoly/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

#include "pointpoly/errors.hpp"

namespace pointpoly {

GrayImage::GrayImage(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be >= 1");
  if (!(fill >= 0.0 && fill <= 1.0)) throw std::invalid_argument("intensity outside [0,1]");
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be >= 1");
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("image data length != width * height");
  }
  for (double v : data_) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("intensity outside [0,1]");
  }
}

void GrayImage::set(int x, int y, double v) {
  data_[static_cast<std::size_t>(y) * width_ + x] = std::clamp(v, 0.0, 1.0);
}

double sample_bilinear(const GrayImage& img, double x, double y) {
  x = std::clamp(x, 0.0, static_cast<double>(img.width() - 1));
  y = std::clamp(y, 0.0, static_cast<double>(img.height() - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = img.at(x0, y0) + fx * (img.at(x1, y0) - img.at(x0, y0));
  const double bottom = img.at(x0, y1) + fx * (img.at(x1, y1) - img.at(x0, y1));
  return std::clamp(top + fy * (bottom - top), 0.0, 1.0);
}

GrayImage crop_axis_aligned(const GrayImage& img, const Rect& rect) {
  const double x0 = std::max(rect.left(), 0.0);
  const double y0 = std::max(rect.top(), 0.0);
  const double x1 = std::min(rect.left() + rect.width, static_cast<double>(img.width()));
  const double y1 = std::min(rect.top() + rect.height, static_cast<double>(img.height()));
  if (!(x1 > x0 && y1 > y0)) throw DegenerateRect("crop rect does not overlap the image");

  const int w = std::max(1, static_cast<int>(std::lround(rect.width)));
  const int h = std::max(1, static_cast<int>(std::lround(rect.height)));
  const double sx = rect.width / w;
  const double sy = rect.height / h;
  std::vector<double> out(static_cast<std::size_t>(w) * h);
  for (int j = 0; j < h; ++j) {
    const double y = rect.top() + (j + 0.5) * sy - 0.5;
    for (int i = 0; i < w; ++i) {
      out[static_cast<std::size_t>(j) * w + i] =
          sample_bilinear(img, rect.left() + (i + 0.5) * sx - 0.5, y);
    }
  }
  return GrayImage(w, h, std::move(out));
}

GrayImage resize_bilinear(const GrayImage& img, int width, int height) {
  if (width == img.width() && height == img.height()) return img;
  const double sx = static_cast<double>(img.width()) / width;
  const double sy = static_cast<double>(img.height()) / height;
  std::vector<double> out(static_cast<std::size_t>(width) * height);
  for (int j = 0; j < height; ++j) {
    const double y = (j + 0.5) * sy - 0.5;
    for (int i = 0; i < width; ++i) {
      out[static_cast<std::size_t>(j) * width + i] = sample_bilinear(img, (i + 0.5) * sx - 0.5, y);
    }
  }
  return GrayImage(width, height, std::move(out));
}

// ---------------------------------------------------------------------------
// PGM

namespace {

class PgmTokenizer {
 public:
  explicit PgmTokenizer(std::span<const unsigned char> bytes) : bytes_(bytes) {}

  // Next whitespace-delimited token, skipping '#' comments.
  std::string token() {
    skip_space();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      out.push_back(static_cast<char>(bytes_[pos_++]));
    }
    if (out.empty()) throw FormatError("PGM: unexpected end of header");
    return out;
  }

  int integer() {
    const std::string t = token();
    if (!std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(c); }) ||
        t.size() > 9) {
      throw FormatError("PGM: expected an integer, got '" + t + "'");
    }
    return std::stoi(t);
  }

  // Consumes the single whitespace byte that separates the header from raw data.
  void end_header() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError("PGM: missing whitespace after header");
    }
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  void skip_space() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage parse_pgm(std::span<const unsigned char> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw FormatError("PGM: bad magic (expected P2 or P5)");
  }
  const bool raw = bytes[1] == '5';
  PgmTokenizer tok(bytes.subspan(2));
  const int width = tok.integer();
  const int height = tok.integer();
  const int maxval = tok.integer();
  if (width < 1 || height < 1) throw FormatError("PGM: zero dimension");
  if (maxval < 1 || maxval > 255) throw FormatError("PGM: maxval must be in [1,255]");

  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<double> data;
  data.reserve(count);
  if (raw) {
    tok.end_header();
    const std::size_t start = 2 + tok.position();
    if (bytes.size() < start + count) throw FormatError("PGM: truncated pixel data");
    for (std::size_t i = 0; i < count; ++i) {
      const int v = bytes[start + i];
      if (v > maxval) throw FormatError("PGM: sample exceeds maxval");
      data.push_back(static_cast<double>(v) / maxval);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = tok.integer();
      if (v > maxval) throw FormatError("PGM: sample exceeds maxval");
      data.push_back(static_cast<double>(v) / maxval);
    }
  }
  return GrayImage(width, height, std::move(data));
}

GrayImage read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image: " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  return parse_pgm(bytes);
}

std::vector<unsigned char> encode_pgm(const GrayImage& img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  out.reserve(out.size() + img.data().size());
  for (double v : img.data()) {
    out.push_back(static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
  }
  return out;
}

void write_image(const GrayImage& img, const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = encode_pgm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write image: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace pointpoly
