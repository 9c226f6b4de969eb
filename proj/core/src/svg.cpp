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
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pointpoly/errors.hpp"
#include "pointpoly/raster.hpp"

namespace pointpoly {

namespace {

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

// 8-bit palettized BMP with a gray ramp palette, rows stored bottom-up.
std::vector<unsigned char> encode_bmp(const GrayImage& img) {
  const auto w = static_cast<std::uint32_t>(img.width());
  const auto h = static_cast<std::uint32_t>(img.height());
  const std::uint32_t stride = (w + 3u) & ~3u;
  const std::uint32_t offset = 14 + 40 + 256 * 4;
  std::vector<unsigned char> out;
  out.reserve(offset + stride * h);
  out.push_back('B');
  out.push_back('M');
  put_u32(out, offset + stride * h);
  put_u32(out, 0);
  put_u32(out, offset);
  put_u32(out, 40);
  put_u32(out, w);
  put_u32(out, h);
  put_u16(out, 1);
  put_u16(out, 8);
  put_u32(out, 0);
  put_u32(out, stride * h);
  put_u32(out, 2835);
  put_u32(out, 2835);
  put_u32(out, 256);
  put_u32(out, 0);
  for (int i = 0; i < 256; ++i) {
    const auto g = static_cast<unsigned char>(i);
    out.insert(out.end(), {g, g, g, 0});
  }
  for (std::uint32_t row = 0; row < h; ++row) {
    const int y = static_cast<int>(h - 1 - row);
    for (std::uint32_t x = 0; x < stride; ++x) {
      unsigned char v = 0;
      if (x < w) v = static_cast<unsigned char>(std::lround(img.at(static_cast<int>(x), y) * 255.0));
      out.push_back(v);
    }
  }
  return out;
}

std::string base64(const std::vector<unsigned char>& bytes) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t n = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out.push_back(kAlphabet[(n >> 18) & 63]);
    out.push_back(kAlphabet[(n >> 12) & 63]);
    out.push_back(kAlphabet[(n >> 6) & 63]);
    out.push_back(kAlphabet[n & 63]);
  }
  if (i < bytes.size()) {
    std::uint32_t n = bytes[i] << 16;
    if (i + 1 < bytes.size()) n |= bytes[i + 1] << 8;
    out.push_back(kAlphabet[(n >> 18) & 63]);
    out.push_back(kAlphabet[(n >> 12) & 63]);
    out.push_back(i + 1 < bytes.size() ? kAlphabet[(n >> 6) & 63] : '=');
    out.push_back('=');
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_overlay_svg(const OverlayScene& scene) {
  const int width = scene.base ? scene.base->width() : scene.width;
  const int height = scene.base ? scene.base->height() : scene.height;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" "
         "xmlns:xlink=\"http://www.w3.org/1999/xlink\" version=\"1.1\" width=\""
      << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n";
  if (scene.base && scene.embed_raster) {
    svg << "  <image x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" image-rendering=\"pixelated\" xlink:href=\"data:image/bmp;base64,"
        << base64(encode_bmp(*scene.base)) << "\"/>\n";
  }
  for (const OverlayLayer& layer : scene.layers) {
    const auto& v = layer.polygon.vertices();
    svg << "  <path d=\"M " << fmt_coord(v[0].x) << " " << fmt_coord(v[0].y);
    for (std::size_t i = 1; i < v.size(); ++i) {
      svg << " L " << fmt_coord(v[i].x) << " " << fmt_coord(v[i].y);
    }
    svg << " Z\" stroke=\"" << xml_escape(layer.stroke) << "\" stroke-width=\"1\" fill=\""
        << (layer.filled ? xml_escape(layer.stroke) : std::string("none")) << "\"";
    if (layer.filled) svg << " fill-opacity=\"0.35\"";
    svg << ">";
    if (!layer.label.empty()) svg << "<title>" << xml_escape(layer.label) << "</title>";
    svg << "</path>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_overlay_svg(const OverlayScene& scene, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write overlay: " + path.string());
  out << render_overlay_svg(scene);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace pointpoly
