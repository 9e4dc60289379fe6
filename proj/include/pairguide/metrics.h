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

#include <map>
#include <string>
#include <vector>

#include "pairguide/catalog.h"
#include "pairguide/render_log.h"
#include "pairguide/types.h"

namespace pairguide {

inline constexpr DurationMs kDefaultGapThresholdMs = 30000;

struct DeviceMetrics {
  DurationMs personal_listen_ms = 0;
  DurationMs eavesdrop_ms = 0;
  DurationMs silence_ms = 0;
  // Personal clips cut off before their natural end (by a new selection or
  // a stop) while the log was still running.
  std::uint64_t interrupts = 0;
  bool operator==(const DeviceMetrics&) const = default;
};

// Shared listening between two devices: intervals where both render the same
// clip id, whatever the source on either side.
struct PairMetrics {
  DeviceId a = 0;
  DeviceId b = 0;
  DurationMs mutual_ms = 0;
  double mutual_fraction = 0.0;
  DurationMs max_mutual_offset_skew_ms = 0;
  // Runs of shared listening, merged across gaps of at most the threshold.
  std::uint64_t episodes = 0;
  bool operator==(const PairMetrics&) const = default;
};

struct Metrics {
  DurationMs duration_ms = 0;
  DurationMs gap_threshold_ms = kDefaultGapThresholdMs;
  std::map<DeviceId, DeviceMetrics> devices;
  std::vector<PairMetrics> pairs;  // every unordered pair, a < b
  bool operator==(const Metrics&) const = default;
};

// `catalog` supplies clip durations for interrupt detection.
Metrics compute_metrics(const RenderLog& log, const Catalog& catalog,
                        DurationMs gap_threshold_ms = kDefaultGapThresholdMs);

std::string metrics_to_json(const Metrics& metrics);

}  // namespace pairguide
