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

#include "pointpoly/annotation.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pointpoly/errors.hpp"

namespace pointpoly {

namespace {

using nlohmann::json;

Point2 parse_point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError(where + ": expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

AnnotationInstance parse_instance(const json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": instance must be an object");
  AnnotationInstance inst;
  if (j.contains("polygon") && !j["polygon"].is_null()) {
    const json& pj = j["polygon"];
    if (!pj.is_array() || pj.size() < 3) throw SchemaError(where + ": polygon needs >= 3 vertices");
    std::vector<Point2> v;
    for (const json& p : pj) v.push_back(parse_point(p, where + ".polygon"));
    try {
      inst.polygon = Polygon(std::move(v));
    } catch (const InvalidPolygon& e) {
      throw SchemaError(where + ": " + e.what());
    }
  }
  if (j.contains("point") && !j["point"].is_null()) inst.point = parse_point(j["point"], where + ".point");
  if (j.contains("text") && !j["text"].is_null()) {
    if (!j["text"].is_string()) throw SchemaError(where + ": text must be a string");
    inst.text = j["text"].get<std::string>();
  }
  if (j.contains("care")) {
    if (!j["care"].is_boolean()) throw SchemaError(where + ": care must be a boolean");
    inst.care = j["care"].get<bool>();
  }
  if (inst.polygon) inst.polygon->set_care(inst.care);
  if (j.contains("baseline") && !j["baseline"].is_null()) {
    const json& b = j["baseline"];
    if (!b.is_object() || !b.contains("kind") || !b["kind"].is_string()) {
      throw SchemaError(where + ": baseline needs a kind");
    }
    BaselineInfo info;
    info.kind = b["kind"].get<std::string>();
    info.angle = b.value("angle", 0.0);
    info.amplitude = b.value("amplitude", 0.0);
    info.period = b.value("period", 0.0);
    inst.baseline = info;
  }
  if (!inst.polygon && !inst.point) throw SchemaError(where + ": instance needs a polygon or a point");
  return inst;
}

json instance_json(const AnnotationInstance& inst) {
  json j;
  if (inst.polygon) {
    json arr = json::array();
    for (const Point2& p : inst.polygon->vertices()) arr.push_back({p.x, p.y});
    j["polygon"] = arr;
  } else {
    j["polygon"] = nullptr;
  }
  j["point"] = inst.point ? json{inst.point->x, inst.point->y} : json(nullptr);
  j["text"] = inst.text ? json(*inst.text) : json(nullptr);
  j["care"] = inst.care;
  if (inst.baseline) {
    json b{{"kind", inst.baseline->kind}};
    if (inst.baseline->kind == "rotated") b["angle"] = inst.baseline->angle;
    if (inst.baseline->kind == "curved") {
      b["amplitude"] = inst.baseline->amplitude;
      b["period"] = inst.baseline->period;
    }
    j["baseline"] = b;
  }
  return j;
}

}  // namespace

Manifest parse_manifest(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("manifest: ") + e.what());
  }
  if (!doc.is_array()) throw SchemaError("manifest: top level must be an array of records");
  Manifest out;
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const json& rec = doc[r];
    const std::string where = "record " + std::to_string(r);
    if (!rec.is_object() || !rec.contains("image_path") || !rec["image_path"].is_string() ||
        !rec.contains("instances") || !rec["instances"].is_array()) {
      throw SchemaError(where + ": expected {image_path, instances}");
    }
    AnnotationRecord record{rec["image_path"].get<std::string>(), {}};
    for (std::size_t i = 0; i < rec["instances"].size(); ++i) {
      record.instances.push_back(
          parse_instance(rec["instances"][i], where + ".instance " + std::to_string(i)));
    }
    out.push_back(std::move(record));
  }
  return out;
}

std::string serialize_manifest(const Manifest& manifest) {
  json doc = json::array();
  for (const AnnotationRecord& rec : manifest) {
    json instances = json::array();
    for (const AnnotationInstance& inst : rec.instances) instances.push_back(instance_json(inst));
    doc.push_back({{"image_path", rec.image_path}, {"instances", instances}});
  }
  return doc.dump(1) + "\n";
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest: " + path.string());
  out << serialize_manifest(manifest);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace pointpoly
