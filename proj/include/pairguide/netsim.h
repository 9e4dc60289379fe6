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
#include <functional>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <vector>

#include "pairguide/types.h"

namespace pairguide::netsim {

inline constexpr DurationMs kDefaultBeaconPeriodMs = 1000;

struct NetworkModel {
  std::uint64_t seed = 0;
  DurationMs latency_min_ms = 0;
  DurationMs latency_max_ms = 0;
  double loss_prob = 0.0;
  double dup_prob = 0.0;
  DurationMs beacon_period_ms = kDefaultBeaconPeriodMs;

  // No loss, no duplication, zero latency.
  static NetworkModel identity(std::uint64_t seed = 0);
  bool is_identity() const {
    return loss_prob == 0.0 && dup_prob == 0.0 && latency_max_ms == 0;
  }
  // Throws std::invalid_argument on a reversed latency range, probabilities
  // outside [0, 1], or a zero beacon period.
  void validate() const;

  bool operator==(const NetworkModel&) const = default;
};

struct Delivery {
  TimeMs deliver_at_ms = 0;
  std::uint64_t tie_order = 0;
  DeviceId from_device = 0;
  DeviceId dest_device = 0;
  std::vector<std::uint8_t> bytes;
};

struct NetworkCounters {
  std::uint64_t generated = 0;  // copies, including duplicates
  std::uint64_t dropped = 0;
  std::uint64_t delivered = 0;
  std::uint64_t duplicated = 0;

  std::uint64_t pending() const { return generated - dropped - delivered; }
};

// Virtual clock plus pending-delivery queue. Events pop in
// (deliver_at_ms, tie_order) order; tie_order is the enqueue order.
//
// All randomness comes from one mt19937_64 stream. For each destination in
// ascending device id, send() draws: loss; if kept, latency, then dup; if
// duplicated, the duplicate's latency. Nothing else consumes the stream.
class EventQueue {
 public:
  explicit EventQueue(NetworkModel model);

  TimeMs now() const { return now_ms_; }
  const NetworkModel& model() const { return model_; }
  const NetworkCounters& counters() const { return counters_; }
  std::size_t pending() const { return pending_.size(); }
  // Delivery time of the earliest pending copy; nullopt when idle.
  std::optional<TimeMs> next_delivery() const;

  // Fans `bytes` out to `peers` (the sender itself is skipped).
  void send(DeviceId from_device, std::span<const std::uint8_t> bytes,
            std::span<const DeviceId> peers, TimeMs now);

  using DeliverFn = std::function<void(const Delivery&)>;

  // Delivers every copy due at or before `to_ms`, then sets the clock to
  // `to_ms`. Copies the callback enqueues are delivered in the same call if
  // they fall due by `to_ms`. Throws std::invalid_argument if to_ms < now().
  void advance(TimeMs to_ms, const DeliverFn& on_deliver);

 private:
  struct Later {
    bool operator()(const Delivery& a, const Delivery& b) const {
      if (a.deliver_at_ms != b.deliver_at_ms) return a.deliver_at_ms > b.deliver_at_ms;
      return a.tie_order > b.tie_order;
    }
  };

  double draw_unit();
  DurationMs draw_latency();
  void schedule(DeviceId from, DeviceId dest, std::span<const std::uint8_t> bytes,
                TimeMs at);

  NetworkModel model_;
  std::mt19937_64 rng_;
  TimeMs now_ms_ = 0;
  std::uint64_t next_tie_ = 0;
  NetworkCounters counters_;
  std::priority_queue<Delivery, std::vector<Delivery>, Later> pending_;
};

}  // namespace pairguide::netsim
