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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pointpoly/geometry.hpp"

namespace pointpoly {

/// Baseline description carried along with synthetic ground truth.
struct BaselineInfo {
  std::string kind;  // "horizontal", "rotated" or "curved"
  double angle = 0.0;
  double amplitude = 0.0;
  double period = 0.0;

  friend bool operator==(const BaselineInfo&, const BaselineInfo&) = default;
};

struct AnnotationInstance {
  std::optional<Polygon> polygon;
  std::optional<Point2> point;
  std::optional<std::string> text;
  bool care = true;
  std::optional<BaselineInfo> baseline;

  friend bool operator==(const AnnotationInstance&, const AnnotationInstance&) = default;
};

struct AnnotationRecord {
  std::string image_path;  // relative to the manifest's directory
  std::vector<AnnotationInstance> instances;

  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

/// A corpus annotation file: one JSON array of records.
using Manifest = std::vector<AnnotationRecord>;

/// Throws SchemaError on any violation (missing fields, fewer than three
/// vertices, an instance with neither polygon nor point).
Manifest parse_manifest(const std::string& json_text);
std::string serialize_manifest(const Manifest& manifest);

/// IoError when unreadable, SchemaError when malformed.
Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

}  // namespace pointpoly
