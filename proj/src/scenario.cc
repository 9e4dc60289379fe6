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

#include "pairguide/scenario.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pairguide {

using json = nlohmann::json;

namespace {

std::string event_path(std::size_t i) {
  return "events[" + std::to_string(i) + "]";
}

template <typename T>
T field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ScenarioError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioError(path + "." + key, "missing required field");
  try {
    return it->template get<T>();
  } catch (const json::exception&) {
    throw ScenarioError(path + "." + key, "wrong type");
  }
}

template <typename T>
T field_or(const json& obj, const char* key, const std::string& path, T fallback) {
  if (!obj.contains(key)) return fallback;
  return field<T>(obj, key, path);
}

std::uint64_t unsigned_field(const json& obj, const char* key, const std::string& path) {
  auto v = field<std::int64_t>(obj, key, path);
  if (v < 0) throw ScenarioError(path + "." + key, "must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

VolumeLevel volume_field(const json& obj, const char* key, const std::string& path,
                         VolumeLevel fallback) {
  if (!obj.contains(key)) return fallback;
  auto level = parse_volume(field<std::string>(obj, key, path));
  if (!level) throw ScenarioError(path + "." + key, "expected off, quiet or loud");
  return *level;
}

Action parse_action(const json& j, const std::string& path) {
  const auto type = field<std::string>(j, "type", path);
  if (type == "tap") {
    return TapAction{field<std::string>(j, "wall_id", path),
                     Point{field<std::int64_t>(j, "x", path),
                           field<std::int64_t>(j, "y", path)}};
  }
  if (type == "select") return SelectAction{field<std::string>(j, "target_id", path)};
  if (type == "set_volume") {
    if (!j.contains("level")) throw ScenarioError(path + ".level", "missing required field");
    return SetVolumeAction{volume_field(j, "level", path, VolumeLevel::kQuiet)};
  }
  if (type == "switch_wall") return SwitchWallAction{field<std::string>(j, "wall_id", path)};
  if (type == "stop") return StopAction{};
  throw ScenarioError(path + ".type", "unknown action '" + type + "'");
}

json action_to_json(const Action& action) {
  struct Visitor {
    json operator()(const TapAction& a) const {
      return {{"type", "tap"}, {"wall_id", a.wall_id}, {"x", a.point.x}, {"y", a.point.y}};
    }
    json operator()(const SelectAction& a) const {
      return {{"type", "select"}, {"target_id", a.target_id}};
    }
    json operator()(const SetVolumeAction& a) const {
      return {{"type", "set_volume"}, {"level", std::string(to_string(a.level))}};
    }
    json operator()(const SwitchWallAction& a) const {
      return {{"type", "switch_wall"}, {"wall_id", a.wall_id}};
    }
    json operator()(const StopAction&) const { return {{"type", "stop"}}; }
  };
  return std::visit(Visitor{}, action);
}

}  // namespace

void validate_scenario(const Catalog& catalog, const Scenario& scenario) {
  try {
    scenario.network.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("network", e.what());
  }
  if (scenario.duration_ms == 0) {
    throw ScenarioError("duration_ms", "must be positive");
  }

  std::map<DeviceId, std::string> displayed;
  for (std::size_t i = 0; i < scenario.devices.size(); ++i) {
    const DeviceConfig& d = scenario.devices[i];
    const std::string path = "devices[" + std::to_string(i) + "]";
    if (!displayed.emplace(d.device_id, d.initial_wall).second) {
      throw ScenarioError(path + ".device_id",
                          "duplicate device id " + std::to_string(d.device_id));
    }
    if (catalog.find_wall(d.initial_wall) == nullptr) {
      throw ScenarioError(path + ".initial_wall",
                          "unknown wall '" + d.initial_wall + "'");
    }
  }

  TimeMs previous = 0;
  for (std::size_t i = 0; i < scenario.events.size(); ++i) {
    const TraceEvent& e = scenario.events[i];
    const std::string path = event_path(i);
    if (e.t_ms < previous) throw ScenarioError(path + ".t_ms", "events not sorted by time");
    if (e.t_ms >= scenario.duration_ms) {
      throw ScenarioError(path + ".t_ms", "event at or after duration_ms");
    }
    previous = e.t_ms;
    auto dev = displayed.find(e.device_id);
    if (dev == displayed.end()) {
      throw ScenarioError(path + ".device_id",
                          "unknown device " + std::to_string(e.device_id));
    }
    if (const auto* tap = std::get_if<TapAction>(&e.action)) {
      const Wall* wall = catalog.find_wall(tap->wall_id);
      if (wall == nullptr) {
        throw ScenarioError(path + ".action.wall_id", "unknown wall '" + tap->wall_id + "'");
      }
      if (tap->wall_id != dev->second) {
        throw ScenarioError(path + ".action.wall_id",
                            "tap on wall '" + tap->wall_id + "' while device " +
                                std::to_string(e.device_id) + " displays '" +
                                dev->second + "'");
      }
      if (!wall->in_bounds(tap->point)) {
        throw ScenarioError(path + ".action", "tap outside wall '" + tap->wall_id + "'");
      }
    } else if (const auto* sel = std::get_if<SelectAction>(&e.action)) {
      if (catalog.find_target(sel->target_id) == nullptr) {
        throw ScenarioError(path + ".action.target_id",
                            "unknown target '" + sel->target_id + "'");
      }
    } else if (const auto* sw = std::get_if<SwitchWallAction>(&e.action)) {
      if (catalog.find_wall(sw->wall_id) == nullptr) {
        throw ScenarioError(path + ".action.wall_id", "unknown wall '" + sw->wall_id + "'");
      }
      dev->second = sw->wall_id;
    }
  }
}

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("$", std::string("malformed scenario JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ScenarioError("$", "expected an object");

  Scenario s;
  s.duration_ms = unsigned_field(doc, "duration_ms", "$");

  if (doc.contains("network")) {
    const json& n = doc["network"];
    const std::string path = "network";
    if (!n.is_object()) throw ScenarioError(path, "expected an object");
    s.network.seed = n.contains("seed") ? unsigned_field(n, "seed", path) : 0;
    if (n.contains("latency_ms")) {
      auto range = field<std::vector<std::int64_t>>(n, "latency_ms", path);
      if (range.size() != 2 || range[0] < 0 || range[1] < 0) {
        throw ScenarioError(path + ".latency_ms", "expected [min, max] >= 0");
      }
      s.network.latency_min_ms = static_cast<DurationMs>(range[0]);
      s.network.latency_max_ms = static_cast<DurationMs>(range[1]);
    }
    s.network.loss_prob = field_or<double>(n, "loss_prob", path, 0.0);
    s.network.dup_prob = field_or<double>(n, "dup_prob", path, 0.0);
    if (n.contains("beacon_period_ms")) {
      s.network.beacon_period_ms = unsigned_field(n, "beacon_period_ms", path);
    }
  }

  if (!doc.contains("devices") || !doc["devices"].is_array()) {
    throw ScenarioError("devices", "expected an array");
  }
  for (std::size_t i = 0; i < doc["devices"].size(); ++i) {
    const json& d = doc["devices"][i];
    const std::string path = "devices[" + std::to_string(i) + "]";
    DeviceConfig cfg;
    const auto id = unsigned_field(d, "device_id", path);
    if (id > 0xFFFFFFFFu) throw ScenarioError(path + ".device_id", "outside u32 range");
    cfg.device_id = static_cast<DeviceId>(id);
    if (d.contains("group_id")) {
      const auto g = unsigned_field(d, "group_id", path);
      if (g > 0xFFFFFFFFu) throw ScenarioError(path + ".group_id", "outside u32 range");
      cfg.group_id = static_cast<GroupId>(g);
    }
    cfg.initial_volume = volume_field(d, "initial_volume", path, VolumeLevel::kQuiet);
    cfg.initial_wall = field<std::string>(d, "initial_wall", path);
    s.devices.push_back(std::move(cfg));
  }

  if (doc.contains("events")) {
    if (!doc["events"].is_array()) throw ScenarioError("events", "expected an array");
    for (std::size_t i = 0; i < doc["events"].size(); ++i) {
      const json& e = doc["events"][i];
      const std::string path = event_path(i);
      TraceEvent ev;
      ev.t_ms = unsigned_field(e, "t_ms", path);
      ev.device_id = static_cast<DeviceId>(unsigned_field(e, "device_id", path));
      if (!e.contains("action")) throw ScenarioError(path + ".action", "missing required field");
      ev.action = parse_action(e["action"], path + ".action");
      s.events.push_back(std::move(ev));
    }
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("$", "cannot open scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& s) {
  json doc;
  doc["duration_ms"] = s.duration_ms;
  doc["network"] = {{"seed", s.network.seed},
                    {"latency_ms", {s.network.latency_min_ms, s.network.latency_max_ms}},
                    {"loss_prob", s.network.loss_prob},
                    {"dup_prob", s.network.dup_prob},
                    {"beacon_period_ms", s.network.beacon_period_ms}};
  doc["devices"] = json::array();
  for (const DeviceConfig& d : s.devices) {
    doc["devices"].push_back({{"device_id", d.device_id},
                              {"group_id", d.group_id},
                              {"initial_volume", std::string(to_string(d.initial_volume))},
                              {"initial_wall", d.initial_wall}});
  }
  doc["events"] = json::array();
  for (const TraceEvent& e : s.events) {
    doc["events"].push_back(
        {{"t_ms", e.t_ms}, {"device_id", e.device_id}, {"action", action_to_json(e.action)}});
  }
  return doc.dump(2);
}

std::vector<DeviceId> companions_of(const Scenario& scenario, DeviceId device) {
  GroupId group = 0;
  bool found = false;
  for (const DeviceConfig& d : scenario.devices) {
    if (d.device_id == device) {
      group = d.group_id;
      found = true;
    }
  }
  std::vector<DeviceId> out;
  if (!found) return out;
  for (const DeviceConfig& d : scenario.devices) {
    if (d.group_id == group && d.device_id != device) out.push_back(d.device_id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pairguide
