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

#include "pointpoly/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "pointpoly/errors.hpp"

namespace pointpoly {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  if (hi <= lo) return lo;
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

double standard_normal(std::mt19937_64& rng) {
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

struct Layout {
  double scale;
  int glyph_w;
  int glyph_h;
  double cell_w;
  double cell_h;
  double advance;
  double length;
  std::vector<double> lefts;
  std::vector<double> drops;  // per-character vertical shift (curved text)
  double cos_a = 1.0;
  double sin_a = 0.0;
  Point2 origin;

  Point2 to_image(Point2 local) const {
    return {origin.x + cos_a * local.x - sin_a * local.y,
            origin.y + sin_a * local.x + cos_a * local.y};
  }
  Point2 to_local(Point2 image) const {
    const double dx = image.x - origin.x;
    const double dy = image.y - origin.y;
    return {cos_a * dx + sin_a * dy, -sin_a * dx + cos_a * dy};
  }
};

Layout make_layout(const TextInstance& inst, const GlyphAtlas& atlas) {
  if (inst.text.empty()) throw std::invalid_argument("text instance has no characters");
  if (!(inst.glyph_scale > 0.0)) throw std::invalid_argument("glyph scale must be positive");
  for (char c : inst.text) atlas.glyph(c);

  Layout l;
  l.scale = inst.glyph_scale;
  l.glyph_w = atlas.glyph_width();
  l.glyph_h = atlas.glyph_height();
  l.cell_w = l.glyph_w * l.scale;
  l.cell_h = l.glyph_h * l.scale;
  l.advance = l.cell_w + l.scale;
  const auto n = inst.text.size();
  l.length = static_cast<double>(n) * l.advance - l.scale;
  l.origin = inst.origin;
  const BaselineInfo& b = inst.baseline;
  if (b.kind == "rotated") {
    l.cos_a = std::cos(b.angle);
    l.sin_a = std::sin(b.angle);
  } else if (b.kind == "curved") {
    if (!(b.period > 0.0)) throw std::invalid_argument("curved baseline needs a positive period");
  } else if (b.kind != "horizontal") {
    throw std::invalid_argument("unknown baseline kind: " + b.kind);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double left = static_cast<double>(k) * l.advance;
    l.lefts.push_back(left);
    double drop = 0.0;
    if (b.kind == "curved") {
      drop = b.amplitude * std::sin(2.0 * std::numbers::pi * (left + 0.5 * l.cell_w) / b.period);
    }
    l.drops.push_back(drop);
  }
  return l;
}

GroundTruth truth_from_layout(const Layout& l, const TextInstance& inst) {
  const std::size_t n = l.lefts.size();
  std::vector<Point2> upper;
  std::vector<Point2> lower;
  for (int j = 0; j < 10; ++j) {
    const double x = l.length * j / 9.0;
    const double lo = l.length * std::max(0, j - 1) / 9.0;
    const double hi = l.length * std::min(9, j + 1) / 9.0;
    double top = 0.0;
    double bottom = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (l.lefts[k] > hi || l.lefts[k] + l.cell_w < lo) continue;
      top = any ? std::min(top, l.drops[k]) : l.drops[k];
      bottom = any ? std::max(bottom, l.drops[k] + l.cell_h) : l.drops[k] + l.cell_h;
      any = true;
    }
    if (!any) {
      // Window falls inside a gap: use the nearest cell.
      std::size_t best = 0;
      for (std::size_t k = 1; k < n; ++k) {
        if (std::abs(l.lefts[k] + 0.5 * l.cell_w - x) < std::abs(l.lefts[best] + 0.5 * l.cell_w - x)) {
          best = k;
        }
      }
      top = l.drops[best];
      bottom = l.drops[best] + l.cell_h;
    }
    upper.push_back(l.to_image({x, top}));
    lower.push_back(l.to_image({x, bottom}));
  }
  std::vector<Point2> ring(upper);
  ring.insert(ring.end(), lower.rbegin(), lower.rend());

  GroundTruth gt{Polygon(std::move(ring)), {}, inst.text, {}, {}, inst.baseline};
  gt.center = centroid(gt.polygon);
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = k == 0 ? 0.0 : l.lefts[k] - 0.5 * l.scale;
    const double hi = k + 1 == n ? l.length : l.lefts[k] + l.cell_w + 0.5 * l.scale;
    gt.char_spans.push_back({lo, hi});
    double min_x = INFINITY;
    double max_x = -INFINITY;
    for (double u : {lo, hi}) {
      for (double v : {l.drops[k], l.drops[k] + l.cell_h}) {
        const Point2 p = l.to_image({u, v});
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
      }
    }
    gt.char_x_extents.push_back({min_x, max_x});
  }
  return gt;
}

void paint(GrayImage& img, const Layout& l, const TextInstance& inst, const GlyphAtlas& atlas,
           const BoundingBox& box) {
  const int x0 = std::max(0, static_cast<int>(std::floor(box.min_x)) - 1);
  const int y0 = std::max(0, static_cast<int>(std::floor(box.min_y)) - 1);
  const int x1 = std::min(img.width() - 1, static_cast<int>(std::ceil(box.max_x)) + 1);
  const int y1 = std::min(img.height() - 1, static_cast<int>(std::ceil(box.max_y)) + 1);
  const auto n = static_cast<long>(inst.text.size());
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Point2 d = l.to_local({x + 0.5, y + 0.5});
      const long k = static_cast<long>(std::floor(d.x / l.advance));
      if (k < 0 || k >= n) continue;
      const double u = d.x - l.lefts[k];
      const double v = d.y - l.drops[k];
      if (u < 0.0 || u >= l.cell_w || v < 0.0 || v >= l.cell_h) continue;
      const int gx = std::min(l.glyph_w - 1, static_cast<int>(u / l.scale));
      const int gy = std::min(l.glyph_h - 1, static_cast<int>(v / l.scale));
      if (atlas.ink(inst.text[k], gy, gx)) img.set(x, y, 1.0);
    }
  }
}

}  // namespace

GroundTruth layout_instance(const TextInstance& inst, const GlyphAtlas& atlas) {
  return truth_from_layout(make_layout(inst, atlas), inst);
}

RenderedScene render(const SceneSpec& spec, const GlyphAtlas& atlas) {
  if (spec.noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be >= 0");
  RenderedScene out{GrayImage(spec.width, spec.height, 0.0), {}};
  for (const TextInstance& inst : spec.instances) {
    const Layout l = make_layout(inst, atlas);
    GroundTruth gt = truth_from_layout(l, inst);
    const BoundingBox box = gt.polygon.bounds();
    if (box.min_x < 0.0 || box.min_y < 0.0 || box.max_x > spec.width || box.max_y > spec.height) {
      throw InstanceOutOfCanvas("text instance '" + inst.text + "' extends past the canvas");
    }
    paint(out.image, l, inst, atlas, box);
    out.truths.push_back(std::move(gt));
  }

  std::mt19937_64 rng(spec.noise_seed);
  std::vector<double> data(out.image.data().begin(), out.image.data().end());
  for (double& v : data) {
    if (spec.noise_sigma > 0.0) v += spec.noise_sigma * standard_normal(rng);
    v = std::round(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0;
  }
  out.image = GrayImage(spec.width, spec.height, std::move(data));
  return out;
}

CorpusProfile parse_profile(const std::string& name) {
  if (name == "horizontal") return CorpusProfile::Horizontal;
  if (name == "mixed") return CorpusProfile::Mixed;
  if (name == "curved") return CorpusProfile::Curved;
  throw ConfigError("unknown corpus profile: " + name);
}

std::string profile_name(CorpusProfile profile) {
  switch (profile) {
    case CorpusProfile::Horizontal: return "horizontal";
    case CorpusProfile::Mixed: return "mixed";
    case CorpusProfile::Curved: return "curved";
  }
  return "horizontal";
}

SyntheticScene make_scene(std::uint64_t scene_seed, CorpusProfile profile,
                          const CorpusOptions& options, const GlyphAtlas& atlas) {
  constexpr double kMargin = 4.0;
  constexpr double kRowGap = 10.0;
  constexpr double kDeg = std::numbers::pi / 180.0;

  std::mt19937_64 rng(scene_seed);
  std::vector<char> alphabet;
  for (const auto& entry : atlas.glyphs()) alphabet.push_back(entry.first);

  SceneSpec spec;
  spec.width = options.width;
  spec.height = options.height;
  spec.noise_sigma = options.noise_sigma;
  spec.noise_seed = scene_seed ^ 0x9E3779B97F4A7C15ull;

  // Instances occupy disjoint vertical bands so that no word sits beside another.
  std::vector<std::pair<double, double>> bands;
  const int wanted = uniform_int(rng, options.min_instances, options.max_instances);
  for (int i = 0; i < wanted; ++i) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      TextInstance inst;
      const int length = uniform_int(rng, options.min_length, options.max_length);
      for (int c = 0; c < length; ++c) {
        inst.text.push_back(alphabet[uniform_int(rng, 0, static_cast<int>(alphabet.size()) - 1)]);
      }
      inst.glyph_scale = uniform_real(rng, options.min_scale, options.max_scale);
      const double text_length = length * 6.0 * inst.glyph_scale - inst.glyph_scale;

      std::string kind = "horizontal";
      if (profile == CorpusProfile::Curved) {
        kind = "curved";
      } else if (profile == CorpusProfile::Mixed) {
        const double u = uniform01(rng);
        kind = u < 0.5 ? "horizontal" : (u < 0.8 ? "rotated" : "curved");
      }
      inst.baseline.kind = kind;
      if (kind == "rotated") {
        const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
        inst.baseline.angle = sign * uniform_real(rng, 5.0, 20.0) * kDeg;
      } else if (kind == "curved") {
        inst.baseline.amplitude = uniform_real(rng, 0.5, 1.2) * inst.glyph_scale;
        inst.baseline.period = uniform_real(rng, 0.8, 1.5) * text_length;
      }

      const BoundingBox rel = layout_instance(inst, atlas).polygon.bounds();
      const double ox_lo = kMargin - rel.min_x;
      const double ox_hi = options.width - kMargin - rel.max_x;
      const double oy_lo = kMargin - rel.min_y;
      const double oy_hi = options.height - kMargin - rel.max_y;
      if (ox_hi < ox_lo || oy_hi < oy_lo) continue;
      inst.origin = {uniform_real(rng, ox_lo, ox_hi), uniform_real(rng, oy_lo, oy_hi)};
      const double top = inst.origin.y + rel.min_y;
      const double bottom = inst.origin.y + rel.max_y;
      const bool clash = std::any_of(bands.begin(), bands.end(), [&](const auto& b) {
        return top < b.second + kRowGap && b.first < bottom + kRowGap;
      });
      if (clash) continue;
      bands.emplace_back(top, bottom);
      spec.instances.push_back(std::move(inst));
      break;
    }
  }

  SyntheticScene scene{spec, render(spec, atlas), {}};
  for (const GroundTruth& gt : scene.rendered.truths) {
    AnnotationInstance a;
    a.polygon = gt.polygon;
    a.point = gt.center;
    a.text = gt.text;
    a.care = true;
    a.baseline = gt.baseline;
    scene.record.instances.push_back(std::move(a));
  }
  return scene;
}

std::vector<SyntheticScene> make_corpus(std::size_t count, CorpusProfile profile,
                                        std::uint64_t seed, const CorpusOptions& options,
                                        const GlyphAtlas& atlas) {
  std::vector<SyntheticScene> scenes;
  scenes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SyntheticScene s = make_scene(seed ^ static_cast<std::uint64_t>(i), profile, options, atlas);
    char name[32];
    std::snprintf(name, sizeof name, "scene_%05zu.pgm", i);
    s.record.image_path = name;
    scenes.push_back(std::move(s));
  }
  return scenes;
}

Manifest corpus_manifest(const std::vector<SyntheticScene>& scenes) {
  Manifest m;
  for (const SyntheticScene& s : scenes) m.push_back(s.record);
  return m;
}

void write_corpus(const std::vector<SyntheticScene>& scenes, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  for (const SyntheticScene& s : scenes) write_image(s.rendered.image, dir / s.record.image_path);
  save_manifest(corpus_manifest(scenes), dir / "manifest.json");
}

}  // namespace pointpoly
