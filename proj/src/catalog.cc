// Copyright 2026 The pairguide Authors
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

#include "pairguide/catalog.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pairguide {

using json = nlohmann::json;

HitResult hit_test(const Wall& wall, Point point, DurationMs tap_tip_ms) {
  if (!wall.in_bounds(point)) {
    throw std::out_of_range("point (" + std::to_string(point.x) + ", " +
                            std::to_string(point.y) + ") outside wall '" +
                            wall.wall_id + "'");
  }
  for (const Target& t : wall.targets) {
    if (t.rect.contains(point.x, point.y)) return Hit{t.target_id};
  }
  Miss miss;
  miss.tip_duration_ms = tap_tip_ms;
  miss.outline_target_ids.reserve(wall.targets.size());
  for (const Target& t : wall.targets) {
    miss.outline_target_ids.push_back(t.target_id);
  }
  return miss;
}

Catalog Catalog::build(std::vector<Room> rooms, std::vector<Wall> walls,
                       std::vector<Clip> clips, DurationMs tap_tip_ms) {
  Catalog c;
  c.rooms_ = std::move(rooms);
  c.walls_ = std::move(walls);
  c.clips_ = std::move(clips);
  c.tap_tip_ms_ = tap_tip_ms;
  c.index_and_validate();
  return c;
}

void Catalog::index_and_validate() {
  auto at = [](const char* list, std::size_t i) {
    return std::string(list) + "[" + std::to_string(i) + "]";
  };

  if (tap_tip_ms_ == 0) {
    throw CatalogValidationError("tap_tip_ms", "must be positive");
  }

  for (std::size_t i = 0; i < clips_.size(); ++i) {
    const Clip& clip = clips_[i];
    if (clip.duration_ms == 0) {
      throw CatalogValidationError(
          at("clips", i) + ".duration_ms",
          "clip " + std::to_string(clip.clip_id) + " has nonpositive duration");
    }
    if (!clip_index_.emplace(clip.clip_id, i).second) {
      throw CatalogValidationError(
          at("clips", i) + ".clip_id",
          "duplicate clip id " + std::to_string(clip.clip_id));
    }
  }

  std::map<std::string, std::size_t, std::less<>> room_index;
  for (std::size_t i = 0; i < rooms_.size(); ++i) {
    if (!room_index.emplace(rooms_[i].room_id, i).second) {
      throw CatalogValidationError(at("rooms", i) + ".room_id",
                                   "duplicate room id '" + rooms_[i].room_id + "'");
    }
  }

  std::set<ClipId> referenced;
  for (std::size_t w = 0; w < walls_.size(); ++w) {
    const Wall& wall = walls_[w];
    const std::string wpath = at("walls", w);
    if (!wall_index_.emplace(wall.wall_id, w).second) {
      throw CatalogValidationError(wpath + ".wall_id",
                                   "duplicate wall id '" + wall.wall_id + "'");
    }
    if (wall.width_px <= 0 || wall.height_px <= 0) {
      throw CatalogValidationError(wpath, "wall '" + wall.wall_id +
                                              "' has nonpositive imagemap size");
    }
    if (!room_index.contains(wall.room_id)) {
      throw CatalogValidationError(wpath + ".room_id",
                                   "wall '" + wall.wall_id +
                                       "' names unknown room '" + wall.room_id + "'");
    }
    for (std::size_t t = 0; t < wall.targets.size(); ++t) {
      const Target& target = wall.targets[t];
      const std::string tpath = wpath + "." + at("targets", t);
      const Rect& r = target.rect;
      if (r.width <= 0 || r.height <= 0 || r.x < 0 || r.y < 0 ||
          r.x + r.width > wall.width_px || r.y + r.height > wall.height_px) {
        throw CatalogValidationError(
            tpath + ".rect", "target '" + target.target_id +
                                 "' does not lie inside the imagemap of wall '" +
                                 wall.wall_id + "'");
      }
      if (!clip_index_.contains(target.clip_id)) {
        throw CatalogValidationError(
            tpath + ".clip_id", "target '" + target.target_id +
                                    "' references unknown clip " +
                                    std::to_string(target.clip_id));
      }
      for (std::size_t o = 0; o < t; ++o) {
        if (wall.targets[o].rect.intersects(r)) {
          throw CatalogValidationError(
              tpath + ".rect", "target '" + target.target_id +
                                   "' overlaps target '" +
                                   wall.targets[o].target_id + "'");
        }
      }
      if (!target_index_.emplace(target.target_id, std::pair{w, t}).second) {
        throw CatalogValidationError(
            tpath + ".target_id",
            "duplicate target id '" + target.target_id + "'");
      }
      referenced.insert(target.clip_id);
    }
  }

  // Each wall must be listed by exactly one room, and that room must be the
  // one the wall names.
  std::map<std::string, std::string, std::less<>> owner;
  for (std::size_t i = 0; i < rooms_.size(); ++i) {
    const Room& room = rooms_[i];
    for (std::size_t k = 0; k < room.wall_ids.size(); ++k) {
      const std::string& wid = room.wall_ids[k];
      const std::string path = at("rooms", i) + "." + at("walls", k);
      auto wit = wall_index_.find(wid);
      if (wit == wall_index_.end()) {
        throw CatalogValidationError(path, "room '" + room.room_id +
                                               "' lists unknown wall '" + wid + "'");
      }
      if (!owner.emplace(wid, room.room_id).second) {
        throw CatalogValidationError(path, "wall '" + wid +
                                               "' listed by more than one room");
      }
      if (walls_[wit->second].room_id != room.room_id) {
        throw CatalogValidationError(
            path, "wall '" + wid + "' belongs to room '" +
                      walls_[wit->second].room_id + "', not '" + room.room_id + "'");
      }
    }
  }
  for (std::size_t w = 0; w < walls_.size(); ++w) {
    if (!owner.contains(walls_[w].wall_id)) {
      throw CatalogValidationError(at("walls", w), "wall '" + walls_[w].wall_id +
                                                       "' is not listed by its room");
    }
  }

  for (const Clip& clip : clips_) {
    if (!referenced.contains(clip.clip_id)) {
      warnings_.push_back("clip " + std::to_string(clip.clip_id) +
                          " is not referenced by any target");
    }
  }
}

const Clip* Catalog::find_clip(ClipId id) const {
  auto it = clip_index_.find(id);
  return it == clip_index_.end() ? nullptr : &clips_[it->second];
}

const Wall* Catalog::find_wall(std::string_view wall_id) const {
  auto it = wall_index_.find(wall_id);
  return it == wall_index_.end() ? nullptr : &walls_[it->second];
}

const Target* Catalog::find_target(std::string_view target_id) const {
  auto it = target_index_.find(target_id);
  if (it == target_index_.end()) return nullptr;
  return &walls_[it->second.first].targets[it->second.second];
}

const Wall* Catalog::wall_of_target(std::string_view target_id) const {
  auto it = target_index_.find(target_id);
  return it == target_index_.end() ? nullptr : &walls_[it->second.first];
}

HitResult Catalog::hit_test(std::string_view wall_id, Point point) const {
  const Wall* wall = find_wall(wall_id);
  if (wall == nullptr) {
    throw LookupError("unknown wall '" + std::string(wall_id) + "'");
  }
  return pairguide::hit_test(*wall, point, tap_tip_ms_);
}

const Clip& resolve_clip(const Catalog& catalog, std::string_view target_id) {
  const Target* target = catalog.find_target(target_id);
  if (target == nullptr) {
    throw LookupError("unknown target '" + std::string(target_id) + "'");
  }
  // Dangling references are rejected at build time.
  return *catalog.find_clip(target->clip_id);
}

namespace {

// Reads a required member with a path-qualified error on absence or type
// mismatch.
template <typename T>
T field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) {
    throw CatalogValidationError(path, "expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw CatalogValidationError(path + "." + key, "missing required field");
  }
  try {
    return it->template get<T>();
  } catch (const json::exception&) {
    throw CatalogValidationError(path + "." + key, "wrong type");
  }
}

const json& array_field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw CatalogValidationError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array()) {
    throw CatalogValidationError(path + "." + key, "expected an array");
  }
  return *it;
}

ClipId clip_id_field(const json& obj, const std::string& path) {
  auto raw = field<std::int64_t>(obj, "clip_id", path);
  if (raw < 0 || raw > 0xFFFF) {
    throw CatalogValidationError(path + ".clip_id", "clip id outside u16 range");
  }
  return static_cast<ClipId>(raw);
}

Catalog from_json(const json& doc) {
  if (!doc.is_object()) throw CatalogValidationError("$", "expected an object");

  std::vector<Room> rooms;
  const json& jrooms = array_field(doc, "rooms", "$");
  for (std::size_t i = 0; i < jrooms.size(); ++i) {
    const std::string path = "rooms[" + std::to_string(i) + "]";
    Room room;
    room.room_id = field<std::string>(jrooms[i], "room_id", path);
    room.wall_ids = field<std::vector<std::string>>(jrooms[i], "walls", path);
    rooms.push_back(std::move(room));
  }

  std::vector<Wall> walls;
  const json& jwalls = array_field(doc, "walls", "$");
  for (std::size_t i = 0; i < jwalls.size(); ++i) {
    const std::string path = "walls[" + std::to_string(i) + "]";
    Wall wall;
    wall.wall_id = field<std::string>(jwalls[i], "wall_id", path);
    wall.room_id = field<std::string>(jwalls[i], "room_id", path);
    wall.width_px = field<std::int64_t>(jwalls[i], "width_px", path);
    wall.height_px = field<std::int64_t>(jwalls[i], "height_px", path);
    const json& jtargets = array_field(jwalls[i], "targets", path);
    for (std::size_t t = 0; t < jtargets.size(); ++t) {
      const std::string tpath = path + ".targets[" + std::to_string(t) + "]";
      Target target;
      target.target_id = field<std::string>(jtargets[t], "target_id", tpath);
      auto rect = field<std::vector<std::int64_t>>(jtargets[t], "rect", tpath);
      if (rect.size() != 4) {
        throw CatalogValidationError(tpath + ".rect", "expected [x, y, w, h]");
      }
      target.rect = Rect{rect[0], rect[1], rect[2], rect[3]};
      target.clip_id = clip_id_field(jtargets[t], tpath);
      wall.targets.push_back(std::move(target));
    }
    walls.push_back(std::move(wall));
  }

  std::vector<Clip> clips;
  const json& jclips = array_field(doc, "clips", "$");
  for (std::size_t i = 0; i < jclips.size(); ++i) {
    const std::string path = "clips[" + std::to_string(i) + "]";
    Clip clip;
    clip.clip_id = clip_id_field(jclips[i], path);
    auto duration = field<std::int64_t>(jclips[i], "duration_ms", path);
    if (duration <= 0) {
      throw CatalogValidationError(path + ".duration_ms",
                                   "clip " + std::to_string(clip.clip_id) +
                                       " has nonpositive duration");
    }
    clip.duration_ms = static_cast<DurationMs>(duration);
    if (jclips[i].contains("title") && !jclips[i]["title"].is_null()) {
      clip.title = field<std::string>(jclips[i], "title", path);
    }
    clips.push_back(std::move(clip));
  }

  DurationMs tap_tip = kDefaultTapTipMs;
  if (doc.contains("tap_tip_ms")) {
    auto raw = field<std::int64_t>(doc, "tap_tip_ms", "$");
    if (raw <= 0) throw CatalogValidationError("tap_tip_ms", "must be positive");
    tap_tip = static_cast<DurationMs>(raw);
  }

  return Catalog::build(std::move(rooms), std::move(walls), std::move(clips),
                        tap_tip);
}

}  // namespace

Catalog parse_catalog(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw CatalogParseError(std::string("malformed catalog JSON: ") + e.what());
  }
  return from_json(doc);
}

Catalog load_catalog(std::istream& source) {
  std::ostringstream buffer;
  buffer << source.rdbuf();
  return parse_catalog(buffer.str());
}

Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogParseError("cannot open catalog file '" + path + "'");
  return load_catalog(in);
}

std::string serialize_catalog(const Catalog& catalog) {
  json doc;
  doc["rooms"] = json::array();
  for (const Room& room : catalog.rooms()) {
    doc["rooms"].push_back({{"room_id", room.room_id}, {"walls", room.wall_ids}});
  }
  doc["walls"] = json::array();
  for (const Wall& wall : catalog.walls()) {
    json targets = json::array();
    for (const Target& t : wall.targets) {
      targets.push_back({{"target_id", t.target_id},
                         {"rect", {t.rect.x, t.rect.y, t.rect.width, t.rect.height}},
                         {"clip_id", t.clip_id}});
    }
    doc["walls"].push_back({{"wall_id", wall.wall_id},
                            {"room_id", wall.room_id},
                            {"width_px", wall.width_px},
                            {"height_px", wall.height_px},
                            {"targets", std::move(targets)}});
  }
  doc["clips"] = json::array();
  for (const Clip& clip : catalog.clips()) {
    json jc = {{"clip_id", clip.clip_id}, {"duration_ms", clip.duration_ms}};
    if (clip.title) jc["title"] = *clip.title;
    doc["clips"].push_back(std::move(jc));
  }
  doc["tap_tip_ms"] = catalog.tap_tip_ms();
  return doc.dump(2);
}

}  // namespace pairguide
