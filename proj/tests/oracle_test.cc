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

#include "pairguide/oracle.h"

#include <gtest/gtest.h>

#include "pairguide/fuzz.h"
#include "pairguide/simulation.h"
#include "sim_fixtures.h"

namespace pairguide {
namespace {

using testing::fixture;
using testing::three_clip_catalog;

TEST(Oracle, SingleSelectIsSilencePersonalSilence) {
  const Catalog c = three_clip_catalog();
  Scenario s;
  s.duration_ms = 10000;
  s.devices = {{1, 1, VolumeLevel::kQuiet, "w"}};
  s.events = {{1000, 1, SelectAction{"t3"}}};
  const auto r = run_oracle(c, s);
  EXPECT_EQ(r.log.devices.at(1),
            (std::vector<Segment>{{0, 1000, Silence{}},
                                  {1000, 6000, PersonalAudio{3, 0, 1.0}},
                                  {6000, 10000, Silence{}}}));
}

TEST(Oracle, NoEventsIsAllSilence) {
  const Catalog c = three_clip_catalog();
  const auto r = run_oracle(c, testing::pair_scenario(7000, {}));
  for (const auto& [id, segs] : r.log.devices) {
    EXPECT_EQ(segs, (std::vector<Segment>{{0, 7000, Silence{}}})) << id;
  }
  EXPECT_TRUE(r.tap_tips.empty());
}

TEST(Oracle, EarliestStartWinsThenSmallestId) {
  const Catalog c = three_clip_catalog();
  Scenario s = testing::pair_scenario(30000, {{1000, 2, SelectAction{"t8"}},
                                              {1000, 3, SelectAction{"t10"}},
                                              {4000, 4, SelectAction{"t3"}}});
  s.devices.push_back({3, 1, VolumeLevel::kQuiet, "w"});
  s.devices.push_back({4, 1, VolumeLevel::kLoud, "w"});
  const auto r = run_oracle(c, s);
  EXPECT_EQ(r.log.devices.at(1),
            (std::vector<Segment>{{0, 1000, Silence{}},
                                  {1000, 21000, EavesdropAudio{8, 0, 0.5, 2}},
                                  {21000, 30000, Silence{}}}));
  // Device 4 ends its own clip at 9000 and joins device 2's clip.
  EXPECT_EQ(r.log.devices.at(4)[3], (Segment{9000, 21000, EavesdropAudio{8, 8000, 1.0, 2}}));
}

TEST(Oracle, StopEndsPersonalAndEavesdrop) {
  const Catalog c = three_clip_catalog();
  const auto r = run_oracle(
      c, testing::pair_scenario(30000, {{1000, 2, SelectAction{"t8"}}, {4000, 2, StopAction{}}}));
  EXPECT_EQ(r.log.devices.at(1),
            (std::vector<Segment>{{0, 1000, Silence{}},
                                  {1000, 4000, EavesdropAudio{8, 0, 0.5, 2}},
                                  {4000, 30000, Silence{}}}));
}

TEST(Oracle, MatchesSimulationOnFixtureScenario) {
  const Catalog c = load_catalog_file(fixture("catalog_tour.json"));
  const Scenario s = load_scenario_file(fixture("scenario_pair.json"));
  const auto sim = run_simulation(c, s);
  const auto oracle = run_oracle(c, s);
  EXPECT_EQ(to_jsonl(sim.log), to_jsonl(oracle.log));
  EXPECT_EQ(sim.tap_tips, oracle.tap_tips);
}

TEST(Oracle, MatchesSimulationOnIdentityNetworks) {
  const Catalog c = load_catalog_file(fixture("catalog_tour.json"));
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const FuzzCase fc{seed, 200, netsim::NetworkModel::identity()};
    const Scenario s = generate_scenario(c, fc);
    EXPECT_EQ(to_jsonl(run_simulation(c, s).log), to_jsonl(run_oracle(c, s).log)) << seed;
  }
}

}  // namespace
}  // namespace pairguide
