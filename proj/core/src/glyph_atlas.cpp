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

#include <cctype>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pointpoly/errors.hpp"
#include "pointpoly/recognizer.hpp"

namespace pointpoly {

namespace {

// 5x7 bitmaps, one string per row.
struct BuiltinGlyph {
  char symbol;
  const char* rows[7];
};

constexpr BuiltinGlyph kBuiltin5x7[] = {
    {'A', {"01110", "10001", "10001", "11111", "10001", "10001", "10001"}},
    {'B', {"11110", "10001", "10001", "11110", "10001", "10001", "11110"}},
    {'C', {"01110", "10001", "10000", "10000", "10000", "10001", "01110"}},
    {'D', {"11100", "10010", "10001", "10001", "10001", "10010", "11100"}},
    {'E', {"11111", "10000", "10000", "11110", "10000", "10000", "11111"}},
    {'F', {"11111", "10000", "10000", "11110", "10000", "10000", "10000"}},
    {'G', {"01110", "10001", "10000", "10111", "10001", "10001", "01111"}},
    {'H', {"10001", "10001", "10001", "11111", "10001", "10001", "10001"}},
    {'I', {"01110", "00100", "00100", "00100", "00100", "00100", "01110"}},
    {'J', {"00111", "00010", "00010", "00010", "00010", "10010", "01100"}},
    {'K', {"10001", "10010", "10100", "11000", "10100", "10010", "10001"}},
    {'L', {"10000", "10000", "10000", "10000", "10000", "10000", "11111"}},
    {'M', {"10001", "11011", "10101", "10101", "10001", "10001", "10001"}},
    {'N', {"10001", "10001", "11001", "10101", "10011", "10001", "10001"}},
    {'O', {"01110", "10001", "10001", "10001", "10001", "10001", "01110"}},
    {'P', {"11110", "10001", "10001", "11110", "10000", "10000", "10000"}},
    {'Q', {"01110", "10001", "10001", "10001", "10101", "10010", "01101"}},
    {'R', {"11110", "10001", "10001", "11110", "10100", "10010", "10001"}},
    {'S', {"01111", "10000", "10000", "01110", "00001", "00001", "11110"}},
    {'T', {"11111", "00100", "00100", "00100", "00100", "00100", "00100"}},
    {'U', {"10001", "10001", "10001", "10001", "10001", "10001", "01110"}},
    {'V', {"10001", "10001", "10001", "10001", "10001", "01010", "00100"}},
    {'W', {"10001", "10001", "10001", "10101", "10101", "10101", "01010"}},
    {'X', {"10001", "10001", "01010", "00100", "01010", "10001", "10001"}},
    {'Y', {"10001", "10001", "10001", "01010", "00100", "00100", "00100"}},
    {'Z', {"11111", "00001", "00010", "00100", "01000", "10000", "11111"}},
    {'0', {"01110", "10001", "10011", "10101", "11001", "10001", "01110"}},
    {'1', {"00100", "01100", "00100", "00100", "00100", "00100", "01110"}},
    {'2', {"01110", "10001", "00001", "00010", "00100", "01000", "11111"}},
    {'3', {"11111", "00010", "00100", "00010", "00001", "10001", "01110"}},
    {'4', {"00010", "00110", "01010", "10010", "11111", "00010", "00010"}},
    {'5', {"11111", "10000", "11110", "00001", "00001", "10001", "01110"}},
    {'6', {"00110", "01000", "10000", "11110", "10001", "10001", "01110"}},
    {'7', {"11111", "00001", "00010", "00100", "01000", "01000", "01000"}},
    {'8', {"01110", "10001", "10001", "01110", "10001", "10001", "01110"}},
    {'9', {"01110", "10001", "10001", "01111", "00001", "00010", "01100"}},
};

char normalize(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }

std::vector<unsigned char> parse_row(const nlohmann::json& row, int width, char symbol) {
  std::vector<unsigned char> out;
  if (row.is_string()) {
    for (char c : row.get<std::string>()) {
      if (c != '0' && c != '1') throw FormatError(std::string("atlas: bad row for ") + symbol);
      out.push_back(c == '1');
    }
  } else if (row.is_array()) {
    for (const auto& v : row) {
      if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
        throw FormatError(std::string("atlas: bad row for ") + symbol);
      }
      out.push_back(static_cast<unsigned char>(v.get<int>()));
    }
  } else {
    throw FormatError(std::string("atlas: bad row for ") + symbol);
  }
  if (static_cast<int>(out.size()) != width) {
    throw FormatError(std::string("atlas: row width mismatch for ") + symbol);
  }
  return out;
}

}  // namespace

GlyphAtlas::GlyphAtlas(int glyph_height, int glyph_width,
                       std::map<char, std::vector<unsigned char>> glyphs)
    : glyph_height_(glyph_height), glyph_width_(glyph_width) {
  if (glyph_height < 1 || glyph_width < 1) throw FormatError("atlas: glyph size must be >= 1");
  std::set<std::vector<unsigned char>> seen;
  for (auto& [symbol, bitmap] : glyphs) {
    const char key = normalize(symbol);
    if (!std::isalnum(static_cast<unsigned char>(key))) {
      throw FormatError(std::string("atlas: unsupported character '") + symbol + "'");
    }
    if (bitmap.size() != std::size_t(glyph_height) * glyph_width) {
      throw FormatError(std::string("atlas: bitmap size mismatch for '") + symbol + "'");
    }
    for (auto& v : bitmap) v = v != 0;
    if (!seen.insert(bitmap).second) {
      throw FormatError(std::string("atlas: duplicate bitmap for '") + symbol + "'");
    }
    glyphs_[key] = bitmap;
  }
  if (glyphs_.empty()) throw FormatError("atlas: no glyphs");
}

const GlyphAtlas& GlyphAtlas::builtin() {
  static const GlyphAtlas atlas = [] {
    std::map<char, std::vector<unsigned char>> glyphs;
    for (const BuiltinGlyph& g : kBuiltin5x7) {
      std::vector<unsigned char> bitmap;
      for (const char* row : g.rows) {
        for (const char* c = row; *c; ++c) bitmap.push_back(*c == '1');
      }
      glyphs[g.symbol] = std::move(bitmap);
    }
    return GlyphAtlas(7, 5, std::move(glyphs));
  }();
  return atlas;
}

GlyphAtlas GlyphAtlas::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("atlas: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("glyph_height") || !doc.contains("glyph_width") ||
      !doc.contains("glyphs") || !doc["glyphs"].is_object() ||
      !doc["glyph_height"].is_number_integer() || !doc["glyph_width"].is_number_integer()) {
    throw FormatError("atlas: expected {glyph_height, glyph_width, glyphs}");
  }
  const int h = doc["glyph_height"].get<int>();
  const int w = doc["glyph_width"].get<int>();
  std::map<char, std::vector<unsigned char>> glyphs;
  for (const auto& [key, rows] : doc["glyphs"].items()) {
    if (key.size() != 1) throw FormatError("atlas: glyph keys must be single characters");
    if (!rows.is_array() || static_cast<int>(rows.size()) != h) {
      throw FormatError("atlas: glyph '" + key + "' must have glyph_height rows");
    }
    std::vector<unsigned char> bitmap;
    for (const auto& row : rows) {
      const auto parsed = parse_row(row, w, key[0]);
      bitmap.insert(bitmap.end(), parsed.begin(), parsed.end());
    }
    glyphs[key[0]] = std::move(bitmap);
  }
  return GlyphAtlas(h, w, std::move(glyphs));
}

GlyphAtlas GlyphAtlas::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open atlas: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

const std::vector<unsigned char>& GlyphAtlas::glyph(char c) const {
  const auto it = glyphs_.find(normalize(c));
  if (it == glyphs_.end()) throw UnknownCharacter(std::string("no glyph for '") + c + "'");
  return it->second;
}

bool GlyphAtlas::contains(char c) const { return glyphs_.count(normalize(c)) != 0; }

}  // namespace pointpoly
