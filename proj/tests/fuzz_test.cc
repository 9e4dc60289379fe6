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

#include "pairguide/fuzz.h"

#include <gtest/gtest.h>

#include "pairguide/simulation.h"
#include "sim_fixtures.h"

namespace pairguide {
namespace {

Catalog tour() { return load_catalog_file(testing::fixture("catalog_tour.json")); }

TEST(Fuzz, CasesCycleThroughLossSweep) {
  for (std::size_t i = 0; i < 8; ++i) {
    const FuzzCase fc = make_fuzz_case(7, i, 100);
    EXPECT_DOUBLE_EQ(fc.network.loss_prob, kDefaultLossSweep[i % 4]);
    EXPECT_NO_THROW(fc.network.validate());
  }
  EXPECT_TRUE(make_fuzz_case(7, 0, 100).network.is_identity());
  EXPECT_FALSE(make_fuzz_case(7, 4, 100).network.is_identity());
}

TEST(Fuzz, GeneratedScenariosAreValidAndSized) {
  const Catalog c = tour();
  for (std::size_t i = 0; i < 12; ++i) {
    const FuzzCase fc = make_fuzz_case(3, i, 250);
    const Scenario s = generate_scenario(c, fc);
    EXPECT_EQ(s.events.size(), 250u);
    EXPECT_GE(s.devices.size(), 2u);
    EXPECT_LE(s.devices.size(), 4u);
    EXPECT_NO_THROW(validate_scenario(c, s));
    EXPECT_EQ(serialize_scenario(s), serialize_scenario(generate_scenario(c, fc)));
  }
}

TEST(Fuzz, SmallCampaignIsClean) {
  const FuzzReport r = fuzz(tour(), 11, 500, 8);
  EXPECT_TRUE(r.ok()) << fuzz_report_text(r);
  EXPECT_EQ(r.runs.size(), 8u);
  EXPECT_EQ(r.total_events, 4000u);
}

TEST(Fuzz, HeavyLossAndDuplicationStayClean) {
  const Catalog c = tour();
  const FuzzCase fc{21, 800, {21, 0, 200, 0.5, 0.2, 1000}};
  EXPECT_TRUE(check_case(c, fc).empty());
}

TEST(Fuzz, ReportIsDeterministic) {
  const Catalog c = tour();
  EXPECT_EQ(fuzz_report_text(fuzz(c, 5, 200, 4)), fuzz_report_text(fuzz(c, 5, 200, 4)));
}

}  // namespace
}  // namespace pairguide
