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

#include <string>
#include <vector>

#include "pairguide/catalog.h"
#include "pairguide/device.h"
#include "pairguide/metrics.h"
#include "pairguide/netsim.h"
#include "pairguide/protocol.h"
#include "pairguide/render_log.h"
#include "pairguide/scenario.h"

namespace pairguide {

struct SimulationOptions {
  GainConfig gains;
  DurationMs gap_threshold_ms = kDefaultGapThresholdMs;
};

struct SentMessage {
  TimeMs t_ms = 0;
  protocol::Message message;
  std::vector<std::uint8_t> bytes;
  bool operator==(const SentMessage&) const = default;
};

struct Receipt {
  TimeMs t_ms = 0;
  DeviceId to = 0;
  DeviceId from = 0;
  Seq seq = 0;
  HandleStatus status = HandleStatus::kApplied;
};

// A tap that missed every target; visual only, never rendered as audio.
struct TapTip {
  TimeMs t_ms = 0;
  DeviceId device = 0;
  std::string wall_id;
  std::vector<std::string> outline_target_ids;
  DurationMs tip_duration_ms = 0;
  bool operator==(const TapTip&) const = default;
};

struct SimulationResult {
  RenderLog log;
  std::vector<SentMessage> messages;
  std::vector<Receipt> receipts;
  std::vector<TapTip> tap_tips;
  Metrics metrics;
  netsim::NetworkCounters counters;
  // Undecodable datagrams, unknown companion clips and the like.
  std::vector<std::string> diagnostics;
};

// Drives every device through the virtual network. At each instant trace
// events apply first, then due beacons, then deliveries; the render log is
// sampled once the instant has settled. Instants are event times, beacon
// ticks, delivery times and clip ends, never a fixed step. Throws
// ScenarioError for invalid scenarios.
SimulationResult run_simulation(const Catalog& catalog, const Scenario& scenario,
                                const SimulationOptions& options = {});

// {"t","from","seq","type","hex"} per line.
std::string message_trace_jsonl(const std::vector<SentMessage>& messages);
std::string tap_tips_jsonl(const std::vector<TapTip>& tips);

}  // namespace pairguide
