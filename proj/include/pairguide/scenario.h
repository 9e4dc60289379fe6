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

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pairguide/catalog.h"
#include "pairguide/device.h"
#include "pairguide/netsim.h"
#include "pairguide/types.h"

namespace pairguide {

struct DeviceConfig {
  DeviceId device_id = 0;
  GroupId group_id = 1;
  VolumeLevel initial_volume = VolumeLevel::kQuiet;
  std::string initial_wall;
  bool operator==(const DeviceConfig&) const = default;
};

struct TapAction {
  std::string wall_id;
  Point point;
  bool operator==(const TapAction& o) const {
    return wall_id == o.wall_id && point.x == o.point.x && point.y == o.point.y;
  }
};
struct SelectAction {
  std::string target_id;
  bool operator==(const SelectAction&) const = default;
};
struct SetVolumeAction {
  VolumeLevel level = VolumeLevel::kQuiet;
  bool operator==(const SetVolumeAction&) const = default;
};
struct SwitchWallAction {
  std::string wall_id;
  bool operator==(const SwitchWallAction&) const = default;
};
struct StopAction {
  bool operator==(const StopAction&) const = default;
};

using Action =
    std::variant<TapAction, SelectAction, SetVolumeAction, SwitchWallAction, StopAction>;

struct TraceEvent {
  TimeMs t_ms = 0;
  DeviceId device_id = 0;
  Action action;
  bool operator==(const TraceEvent&) const = default;
};

struct Scenario {
  DurationMs duration_ms = 0;
  netsim::NetworkModel network;
  std::vector<DeviceConfig> devices;
  std::vector<TraceEvent> events;
  bool operator==(const Scenario&) const = default;
};

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Checks the scenario against itself and the catalog: sorted event times
// below duration_ms, distinct device ids, known walls/targets/devices, and
// taps inside the wall the device is displaying at that moment.
void validate_scenario(const Catalog& catalog, const Scenario& scenario);

Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario_file(const std::string& path);
std::string serialize_scenario(const Scenario& scenario);

// Same-group peers of `device`, ascending, excluding `device`.
std::vector<DeviceId> companions_of(const Scenario& scenario, DeviceId device);

}  // namespace pairguide
