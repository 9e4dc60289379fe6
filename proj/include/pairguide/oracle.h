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

#include <vector>

#include "pairguide/catalog.h"
#include "pairguide/device.h"
#include "pairguide/render_log.h"
#include "pairguide/scenario.h"
#include "pairguide/simulation.h"

namespace pairguide {

struct OracleResult {
  RenderLog log;
  std::vector<TapTip> tap_tips;
};

// Ground-truth render logs computed from the global event timeline with
// omniscient state: no messages, codec or beacons, and the network model is
// ignored (treated as ideal). Shares only the catalog and the log types with
// the simulator. Throws ScenarioError for invalid scenarios.
OracleResult run_oracle(const Catalog& catalog, const Scenario& scenario,
                        const GainConfig& gains = {});

}  // namespace pairguide
