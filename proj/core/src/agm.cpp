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

#include "pointpoly/agm.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pointpoly/errors.hpp"

namespace pointpoly {

namespace {

constexpr int kLongJ[6] = {1, 2, 4, 6, 8, 10};
constexpr int kLongI[6] = {1, 2, 3, 4, 5, 6};
constexpr int kNormalK[5] = {1, 2, 3, 6, 10};

const char* const kFamilies[4] = {"extra_long", "long", "normal", "short"};

}  // namespace

std::vector<AnchorSize> AnchorLattice::entries() const {
  std::vector<AnchorSize> out;
  out.reserve(size());
  for (const auto* family : {&extra_long, &long_, &normal, &short_}) {
    out.insert(out.end(), family->begin(), family->end());
  }
  return out;
}

std::size_t AnchorLattice::size() const {
  return extra_long.size() + long_.size() + normal.size() + short_.size();
}

void AnchorLattice::validate() const {
  if (size() == 0) throw ConfigError("anchor lattice is empty");
  for (const AnchorSize& a : entries()) {
    if (!(a.width_fraction > 0.0 && a.width_fraction <= 1.0 && a.height_fraction > 0.0 &&
          a.height_fraction <= 1.0)) {
      throw ConfigError("anchor lattice fractions must lie in (0, 1]");
    }
  }
}

AnchorLattice AnchorLattice::from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("lattice: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("lattice: expected an object");
  AnchorLattice lattice;
  std::vector<AnchorSize>* targets[4] = {&lattice.extra_long, &lattice.long_, &lattice.normal,
                                         &lattice.short_};
  for (int f = 0; f < 4; ++f) {
    if (!doc.contains(kFamilies[f])) continue;
    const auto& arr = doc[kFamilies[f]];
    if (!arr.is_array()) throw ConfigError(std::string("lattice: ") + kFamilies[f] + " must be an array");
    for (const auto& pair : arr) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw ConfigError("lattice: entries must be [width_fraction, height_fraction]");
      }
      targets[f]->push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  }
  lattice.validate();
  return lattice;
}

AnchorLattice AnchorLattice::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lattice: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

std::string AnchorLattice::to_json() const {
  nlohmann::json doc = nlohmann::json::object();
  const std::vector<AnchorSize>* sources[4] = {&extra_long, &long_, &normal, &short_};
  for (int f = 0; f < 4; ++f) {
    auto arr = nlohmann::json::array();
    for (const AnchorSize& a : *sources[f]) arr.push_back({a.width_fraction, a.height_fraction});
    doc[kFamilies[f]] = arr;
  }
  return doc.dump(2);
}

AnchorLattice default_lattice() {
  AnchorLattice l;
  for (int q = 1; q <= 4; ++q) {
    l.extra_long.push_back({q <= 2 ? 2.0 / 3.0 : 2.0 / 5.0, 1.0 / (5.0 * q)});
  }
  for (int m = 0; m < 6; ++m) {
    l.long_.push_back({2.0 / (5.0 * kLongJ[m]), 1.0 / (5.0 * kLongI[m])});
  }
  for (int k : kNormalK) l.normal.push_back({2.0 / (5.0 * k), 2.0 / (5.0 * k)});
  for (int m = 0; m < 6; ++m) {
    l.short_.push_back({1.0 / (5.0 * kLongI[m]), 2.0 / (5.0 * kLongJ[m])});
  }
  return l;
}

std::vector<Rect> generate_anchors(Point2 point, const GrayImage& img,
                                   const AnchorLattice& lattice) {
  if (!(point.x >= 0.0 && point.x <= img.width() && point.y >= 0.0 && point.y <= img.height())) {
    throw PointOutOfBounds("anchor center lies outside the image");
  }
  std::vector<Rect> out;
  out.reserve(lattice.size());
  for (const AnchorSize& a : lattice.entries()) {
    const Rect r{point.x, point.y, a.width_fraction * img.width(), a.height_fraction * img.height(),
                 0.0};
    const double w = std::min(r.left() + r.width, double(img.width())) - std::max(r.left(), 0.0);
    const double h = std::min(r.top() + r.height, double(img.height())) - std::max(r.top(), 0.0);
    if (w > 0.0 && h > 0.0) out.push_back(r);
  }
  return out;
}

PlacedCrop place_axis_aligned(const GrayImage& img, const Rect& rect) {
  GrayImage pixels = crop_axis_aligned(img, rect);
  const double sx = rect.width / pixels.width();
  std::vector<Interval> extents(pixels.width());
  for (int i = 0; i < pixels.width(); ++i) {
    extents[i] = {rect.left() + i * sx, rect.left() + (i + 1) * sx};
  }
  Rect axis = rect;
  axis.angle = 0.0;
  return PlacedCrop{std::move(pixels), rect_to_polygon(axis), std::move(extents)};
}

ScoredAnchor select_anchor(const std::vector<Rect>& anchors, const GrayImage& img,
                           const Recognizer& recognizer) {
  if (anchors.empty()) throw EmptyAnchorList("select_anchor: no anchors");
  std::optional<ScoredAnchor> best;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    RecognitionResult rec = recognizer.recognize(place_axis_aligned(img, anchors[i]));
    const double score = aggregate_confidence(rec);
    const bool better = !best || score > best->score ||
                        (score == best->score && anchors[i].area() < best->rect.area());
    if (better) best = ScoredAnchor{anchors[i], std::move(rec), score, i};
  }
  return *best;
}

}  // namespace pointpoly
