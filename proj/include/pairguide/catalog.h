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

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pairguide/types.h"

namespace pairguide {

inline constexpr DurationMs kDefaultTapTipMs = 1500;

class CatalogParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A document that parsed but broke an invariant. `path()` locates the
// offending element, e.g. "walls[0].targets[2].rect".
class CatalogValidationError : public std::runtime_error {
 public:
  CatalogValidationError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct Clip {
  ClipId clip_id = 0;
  DurationMs duration_ms = 0;
  std::optional<std::string> title;

  bool operator==(const Clip&) const = default;
};

// Half-open in both axes: [x, x + width) x [y, y + height).
struct Rect {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t width = 0;
  std::int64_t height = 0;

  bool contains(std::int64_t px, std::int64_t py) const {
    return px >= x && px < x + width && py >= y && py < y + height;
  }
  bool intersects(const Rect& o) const {
    return x < o.x + o.width && o.x < x + width && y < o.y + o.height &&
           o.y < y + height;
  }
  bool operator==(const Rect&) const = default;
};

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
};

struct Target {
  std::string target_id;
  Rect rect;
  ClipId clip_id = 0;

  bool operator==(const Target&) const = default;
};

struct Wall {
  std::string wall_id;
  std::string room_id;
  std::int64_t width_px = 0;
  std::int64_t height_px = 0;
  std::vector<Target> targets;

  bool in_bounds(Point p) const {
    return p.x >= 0 && p.y >= 0 && p.x < width_px && p.y < height_px;
  }
  bool operator==(const Wall&) const = default;
};

struct Room {
  std::string room_id;
  std::vector<std::string> wall_ids;

  bool operator==(const Room&) const = default;
};

struct Hit {
  std::string target_id;
  bool operator==(const Hit&) const = default;
};

// A tap that touched no target: every target on the wall gets outlined for
// `tip_duration_ms`.
struct Miss {
  std::vector<std::string> outline_target_ids;
  DurationMs tip_duration_ms = kDefaultTapTipMs;
  bool operator==(const Miss&) const = default;
};

using HitResult = std::variant<Hit, Miss>;

// Throws std::out_of_range when `point` lies outside the wall's imagemap.
HitResult hit_test(const Wall& wall, Point point,
                   DurationMs tap_tip_ms = kDefaultTapTipMs);

// Immutable, validated content model. Construct through `Catalog::build` or
// `load_catalog`; both reject any document that breaks an invariant.
class Catalog {
 public:
  static Catalog build(std::vector<Room> rooms, std::vector<Wall> walls,
                       std::vector<Clip> clips,
                       DurationMs tap_tip_ms = kDefaultTapTipMs);

  const std::vector<Room>& rooms() const { return rooms_; }
  const std::vector<Wall>& walls() const { return walls_; }
  const std::vector<Clip>& clips() const { return clips_; }
  DurationMs tap_tip_ms() const { return tap_tip_ms_; }

  // Orphan clips and similar authoring slips that do not invalidate the
  // catalog.
  const std::vector<std::string>& warnings() const { return warnings_; }

  const Clip* find_clip(ClipId id) const;
  const Wall* find_wall(std::string_view wall_id) const;
  const Target* find_target(std::string_view target_id) const;
  // Wall the target is drawn on; nullptr for unknown targets.
  const Wall* wall_of_target(std::string_view target_id) const;

  HitResult hit_test(std::string_view wall_id, Point point) const;

  bool operator==(const Catalog& other) const {
    return rooms_ == other.rooms_ && walls_ == other.walls_ &&
           clips_ == other.clips_ && tap_tip_ms_ == other.tap_tip_ms_;
  }

 private:
  Catalog() = default;
  void index_and_validate();

  std::vector<Room> rooms_;
  std::vector<Wall> walls_;
  std::vector<Clip> clips_;
  DurationMs tap_tip_ms_ = kDefaultTapTipMs;
  std::vector<std::string> warnings_;

  std::map<ClipId, std::size_t> clip_index_;
  std::map<std::string, std::size_t, std::less<>> wall_index_;
  // target id -> (wall index, target index)
  std::map<std::string, std::pair<std::size_t, std::size_t>, std::less<>>
      target_index_;
};

Catalog load_catalog(std::istream& source);
Catalog load_catalog_file(const std::string& path);
Catalog parse_catalog(std::string_view json_text);
std::string serialize_catalog(const Catalog& catalog);

// Throws LookupError for unknown targets.
const Clip& resolve_clip(const Catalog& catalog, std::string_view target_id);

}  // namespace pairguide
