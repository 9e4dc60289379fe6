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

#include <gtest/gtest.h>

namespace pairguide {
namespace {

std::string fixture(const std::string& name) {
  return std::string(PAIRGUIDE_FIXTURES) + "/" + name;
}

class ScenarioTest : public ::testing::Test {
 protected:
  Catalog catalog_ = load_catalog_file(fixture("catalog_tour.json"));

  Scenario base() const {
    Scenario s;
    s.duration_ms = 10000;
    s.devices = {{1, 1, VolumeLevel::kQuiet, "entrance_hall_w0"},
                 {2, 1, VolumeLevel::kQuiet, "entrance_hall_w1"}};
    return s;
  }

  std::string error_path(const Scenario& s) const {
    try {
      validate_scenario(catalog_, s);
    } catch (const ScenarioError& e) {
      return e.path();
    }
    return "";
  }
};

TEST_F(ScenarioTest, FixtureLoadsAndValidates) {
  const Scenario s = load_scenario_file(fixture("scenario_pair.json"));
  EXPECT_EQ(s.devices.size(), 2u);
  EXPECT_EQ(s.events.size(), 10u);
  EXPECT_TRUE(s.network.is_identity());
  EXPECT_NO_THROW(validate_scenario(catalog_, s));
  EXPECT_EQ(std::get<SetVolumeAction>(s.events[4].action).level, VolumeLevel::kLoud);
}

TEST_F(ScenarioTest, SerializeRoundTrip) {
  const Scenario s = load_scenario_file(fixture("scenario_pair.json"));
  EXPECT_EQ(parse_scenario(serialize_scenario(s)), s);
}

TEST_F(ScenarioTest, Defaults) {
  const Scenario s = parse_scenario(
      R"({"duration_ms": 5, "devices": [{"device_id": 4, "initial_wall": "x"}]})");
  EXPECT_EQ(s.devices[0].group_id, 1u);
  EXPECT_EQ(s.devices[0].initial_volume, VolumeLevel::kQuiet);
  EXPECT_EQ(s.network.beacon_period_ms, 1000u);
  EXPECT_TRUE(s.events.empty());
}

TEST_F(ScenarioTest, RejectsBadReferences) {
  Scenario s = base();
  s.events = {{100, 3, StopAction{}}};
  EXPECT_EQ(error_path(s), "events[0].device_id");

  s = base();
  s.events = {{100, 1, SelectAction{"ghost"}}};
  EXPECT_EQ(error_path(s), "events[0].action.target_id");

  s = base();
  s.events = {{100, 1, SwitchWallAction{"ghost"}}};
  EXPECT_EQ(error_path(s), "events[0].action.wall_id");

  s = base();
  s.devices[1].initial_wall = "ghost";
  EXPECT_EQ(error_path(s), "devices[1].initial_wall");

  s = base();
  s.devices[1].device_id = 1;
  EXPECT_EQ(error_path(s), "devices[1].device_id");
}

TEST_F(ScenarioTest, RejectsBadTiming) {
  Scenario s = base();
  s.events = {{200, 1, StopAction{}}, {100, 1, StopAction{}}};
  EXPECT_EQ(error_path(s), "events[1].t_ms");
  s.events = {{10000, 1, StopAction{}}};
  EXPECT_EQ(error_path(s), "events[0].t_ms");
  s = base();
  s.network.latency_min_ms = 10;
  EXPECT_EQ(error_path(s), "network");
}

TEST_F(ScenarioTest, TapMustTargetDisplayedWallInBounds) {
  Scenario s = base();
  s.events = {{100, 1, TapAction{"entrance_hall_w1", {5, 5}}}};
  EXPECT_EQ(error_path(s), "events[0].action.wall_id");
  s.events = {{50, 1, SwitchWallAction{"entrance_hall_w1"}},
              {100, 1, TapAction{"entrance_hall_w1", {5, 5}}}};
  EXPECT_EQ(error_path(s), "");
  s.events = {{100, 1, TapAction{"entrance_hall_w0", {320, 5}}}};
  EXPECT_EQ(error_path(s), "events[0].action");
}

TEST_F(ScenarioTest, ParseErrorsCarryPaths) {
  auto path_of = [](const std::string& doc) {
    try {
      parse_scenario(doc);
    } catch (const ScenarioError& e) {
      return e.path();
    }
    return std::string();
  };
  EXPECT_EQ(path_of("{"), "$");
  EXPECT_EQ(path_of(R"({"devices": []})"), "$.duration_ms");
  EXPECT_EQ(path_of(R"({"duration_ms": 5, "devices": [{"device_id": 1, "initial_wall": "w",
                         "initial_volume": "medium"}]})"),
            "devices[0].initial_volume");
  EXPECT_EQ(path_of(R"({"duration_ms": 5, "devices": [],
                         "events": [{"t_ms": 1, "device_id": 1, "action": {"type": "dance"}}]})"),
            "events[0].action.type");
}

TEST_F(ScenarioTest, CompanionsAreSameGroupPeers) {
  Scenario s = base();
  s.devices.push_back({3, 2, VolumeLevel::kQuiet, "entrance_hall_w0"});
  s.devices.push_back({0, 1, VolumeLevel::kQuiet, "entrance_hall_w0"});
  EXPECT_EQ(companions_of(s, 1), (std::vector<DeviceId>{0, 2}));
  EXPECT_TRUE(companions_of(s, 3).empty());
  EXPECT_TRUE(companions_of(s, 42).empty());
}

}  // namespace
}  // namespace pairguide
