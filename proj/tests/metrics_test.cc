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

#include "pairguide/metrics.h"

#include <gtest/gtest.h>
#include "json.hpp"

#include "pairguide/simulation.h"
#include "sim_fixtures.h"

namespace pairguide {
namespace {

using testing::pair_scenario;
using testing::three_clip_catalog;

const PairMetrics& pair(const Metrics& m, DeviceId a, DeviceId b) {
  for (const PairMetrics& p : m.pairs) {
    if (p.a == a && p.b == b) return p;
  }
  throw std::out_of_range("no pair");
}

TEST(Metrics, TwoEavesdroppersShareTheClip) {
  const Catalog c = three_clip_catalog();
  Scenario s = pair_scenario(40000, {{1000, 3, SelectAction{"t8"}}});
  s.devices.push_back({3, 1, VolumeLevel::kQuiet, "w"});
  const Metrics m = run_simulation(c, s).metrics;
  ASSERT_EQ(m.pairs.size(), 3u);
  EXPECT_EQ(pair(m, 1, 2).mutual_ms, 20000u);
  EXPECT_DOUBLE_EQ(pair(m, 1, 2).mutual_fraction, 0.5);
  EXPECT_EQ(pair(m, 1, 2).episodes, 1u);
  EXPECT_EQ(pair(m, 1, 3).mutual_ms, 20000u);
  for (const PairMetrics& p : m.pairs) EXPECT_EQ(p.max_mutual_offset_skew_ms, 0u);
  EXPECT_EQ(m.devices.at(3).personal_listen_ms, 20000u);
  EXPECT_EQ(m.devices.at(1).eavesdrop_ms, 20000u);
  EXPECT_EQ(m.devices.at(1).silence_ms, 20000u);
}

TEST(Metrics, AllSilence) {
  const Catalog c = three_clip_catalog();
  const Metrics m = run_simulation(c, pair_scenario(5000, {})).metrics;
  EXPECT_EQ(pair(m, 1, 2).mutual_ms, 0u);
  EXPECT_EQ(pair(m, 1, 2).mutual_fraction, 0.0);
  EXPECT_EQ(pair(m, 1, 2).episodes, 0u);
  EXPECT_EQ(m.devices.at(1).silence_ms, 5000u);
}

TEST(Metrics, EpisodesMergeAcrossShortGaps) {
  const Catalog c = three_clip_catalog();
  // Shared clip 3 over [1000,6000), [20000,25000) and [70000,75000).
  const Scenario s = pair_scenario(90000, {{1000, 2, SelectAction{"t3"}},
                                           {20000, 2, SelectAction{"t3"}},
                                           {70000, 2, SelectAction{"t3"}}});
  const RenderLog log = run_simulation(c, s).log;
  EXPECT_EQ(pair(compute_metrics(log, c), 1, 2).episodes, 2u);
  EXPECT_EQ(pair(compute_metrics(log, c, 10000), 1, 2).episodes, 3u);
  EXPECT_EQ(pair(compute_metrics(log, c, 64000), 1, 2).episodes, 1u);
  EXPECT_EQ(pair(compute_metrics(log, c), 1, 2).mutual_ms, 15000u);
}

TEST(Metrics, InterruptsCountCutOffClips) {
  const Catalog c = three_clip_catalog();
  const Scenario s = pair_scenario(60000, {{1000, 1, SelectAction{"t8"}},
                                           {5000, 1, SelectAction{"t3"}},
                                           {20000, 1, SelectAction{"t10"}},
                                           {22000, 1, StopAction{}},
                                           {55000, 1, SelectAction{"t8"}}});
  const Metrics m = run_simulation(c, s).metrics;
  // Clip 3 runs out naturally; the final clip 8 is cut by the log end only.
  EXPECT_EQ(m.devices.at(1).interrupts, 2u);
  EXPECT_EQ(m.devices.at(2).interrupts, 0u);
}

TEST(Metrics, SkewReflectsLatency) {
  const Catalog c = three_clip_catalog();
  Scenario s = pair_scenario(30000, {{1000, 2, SelectAction{"t8"}}});
  s.network.latency_min_ms = s.network.latency_max_ms = 80;
  const Metrics m = run_simulation(c, s).metrics;
  EXPECT_EQ(pair(m, 1, 2).mutual_ms, 19920u);
  EXPECT_EQ(pair(m, 1, 2).max_mutual_offset_skew_ms, 0u);
}

TEST(Metrics, JsonShape) {
  const Catalog c = three_clip_catalog();
  const Metrics m = run_simulation(c, pair_scenario(30000, {{1000, 2, SelectAction{"t8"}}})).metrics;
  const auto j = nlohmann::json::parse(metrics_to_json(m));
  EXPECT_EQ(j["duration_ms"], 30000);
  EXPECT_EQ(j["pairs"][0]["mutual_ms"], 20000);
}

}  // namespace
}  // namespace pairguide
