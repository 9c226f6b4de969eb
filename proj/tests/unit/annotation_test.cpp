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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "pointpoly/annotation.hpp"
#include "pointpoly/errors.hpp"

using namespace pointpoly;

namespace {

Manifest sample_manifest() {
  AnnotationRecord a{"a.pgm", {}};
  AnnotationInstance full;
  full.polygon = Polygon({{1, 2}, {30.5, 2}, {30.5, 12.25}, {1, 12.25}});
  full.point = Point2{15.75, 7};
  full.text = "WORD";
  full.baseline = BaselineInfo{"curved", 0.0, 3.5, 80.0};
  a.instances.push_back(full);
  AnnotationInstance point_only;
  point_only.point = Point2{100, 50};
  a.instances.push_back(point_only);
  AnnotationInstance ignored;
  ignored.polygon = Polygon({{0, 0}, {5, 0}, {5, 5}}, false);
  ignored.care = false;
  a.instances.push_back(ignored);
  AnnotationRecord b{"sub/b.pgm", {}};
  AnnotationInstance tilted;
  tilted.polygon = Polygon({{10, 10}, {20, 12}, {19, 17}, {9, 15}});
  tilted.baseline = BaselineInfo{"rotated", 0.3, 0.0, 0.0};
  b.instances.push_back(tilted);
  return {a, b, AnnotationRecord{"empty.pgm", {}}};
}

}  // namespace

TEST(Manifest, RoundTrip) {
  const Manifest m = sample_manifest();
  const std::string text = serialize_manifest(m);
  EXPECT_EQ(parse_manifest(text), m);
  EXPECT_EQ(serialize_manifest(parse_manifest(text)), text);
}

TEST(Manifest, CareFlagReachesPolygon) {
  const Manifest m = parse_manifest(
      R"([{"image_path": "x.pgm", "instances": [{"polygon": [[0,0],[4,0],[4,4]], "care": false}]}])");
  ASSERT_TRUE(m[0].instances[0].polygon.has_value());
  EXPECT_FALSE(m[0].instances[0].polygon->care());
}

TEST(Manifest, SchemaErrors) {
  EXPECT_THROW(parse_manifest("{}"), SchemaError);
  EXPECT_THROW(parse_manifest("[{\"instances\": []}]"), SchemaError);
  EXPECT_THROW(parse_manifest(R"([{"image_path": "x", "instances": [{"text": "A"}]}])"), SchemaError);
  EXPECT_THROW(parse_manifest(R"([{"image_path": "x", "instances": [{"polygon": [[0,0],[1,1]]}]}])"),
               SchemaError);
  EXPECT_THROW(
      parse_manifest(R"([{"image_path": "x", "instances": [{"polygon": [[0,0],[1,1],[2,2]]}]}])"),
      SchemaError);
  EXPECT_THROW(parse_manifest(R"([{"image_path": "x", "instances": [{"point": [1]}]}])"), SchemaError);
  EXPECT_THROW(parse_manifest("[1, 2"), SchemaError);
}

TEST(Manifest, Files) {
  const auto dir = std::filesystem::temp_directory_path() / "pointpoly_manifest";
  std::filesystem::create_directories(dir);
  save_manifest(sample_manifest(), dir / "m.json");
  EXPECT_EQ(load_manifest(dir / "m.json"), sample_manifest());
  EXPECT_THROW(load_manifest(dir / "missing.json"), IoError);
  std::ofstream(dir / "bad.json") << "[{\"image_path\": 3}]";
  EXPECT_THROW(load_manifest(dir / "bad.json"), SchemaError);
  std::filesystem::remove_all(dir);
}
