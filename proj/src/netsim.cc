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

#include "pairguide/netsim.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pairguide::netsim {

NetworkModel NetworkModel::identity(std::uint64_t seed) {
  NetworkModel m;
  m.seed = seed;
  return m;
}

void NetworkModel::validate() const {
  if (latency_min_ms > latency_max_ms) {
    throw std::invalid_argument("latency range [" + std::to_string(latency_min_ms) +
                                ", " + std::to_string(latency_max_ms) +
                                "] is reversed");
  }
  if (!(loss_prob >= 0.0 && loss_prob <= 1.0)) {
    throw std::invalid_argument("loss_prob must lie in [0, 1]");
  }
  if (!(dup_prob >= 0.0 && dup_prob <= 1.0)) {
    throw std::invalid_argument("dup_prob must lie in [0, 1]");
  }
  if (beacon_period_ms == 0) {
    throw std::invalid_argument("beacon_period_ms must be positive");
  }
}

EventQueue::EventQueue(NetworkModel model) : model_(model), rng_(model.seed) {
  model_.validate();
}

std::optional<TimeMs> EventQueue::next_delivery() const {
  if (pending_.empty()) return std::nullopt;
  return pending_.top().deliver_at_ms;
}

// 53 high bits -> [0, 1). Avoids std::uniform_real_distribution, whose
// output is implementation-defined.
double EventQueue::draw_unit() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

DurationMs EventQueue::draw_latency() {
  const std::uint64_t span = model_.latency_max_ms - model_.latency_min_ms + 1;
  const std::uint64_t raw = rng_();
  return model_.latency_min_ms + (span == 0 ? raw : raw % span);
}

void EventQueue::schedule(DeviceId from, DeviceId dest,
                          std::span<const std::uint8_t> bytes, TimeMs at) {
  pending_.push(Delivery{at, next_tie_++, from, dest,
                         std::vector<std::uint8_t>(bytes.begin(), bytes.end())});
}

void EventQueue::send(DeviceId from_device, std::span<const std::uint8_t> bytes,
                      std::span<const DeviceId> peers, TimeMs now) {
  std::vector<DeviceId> dests(peers.begin(), peers.end());
  std::sort(dests.begin(), dests.end());
  dests.erase(std::unique(dests.begin(), dests.end()), dests.end());
  for (DeviceId dest : dests) {
    if (dest == from_device) continue;
    ++counters_.generated;
    if (draw_unit() < model_.loss_prob) {
      ++counters_.dropped;
      continue;
    }
    schedule(from_device, dest, bytes, now + draw_latency());
    if (draw_unit() < model_.dup_prob) {
      ++counters_.generated;
      ++counters_.duplicated;
      schedule(from_device, dest, bytes, now + draw_latency());
    }
  }
}

void EventQueue::advance(TimeMs to_ms, const DeliverFn& on_deliver) {
  if (to_ms < now_ms_) {
    throw std::invalid_argument("cannot move the clock backwards");
  }
  while (!pending_.empty() && pending_.top().deliver_at_ms <= to_ms) {
    Delivery d = pending_.top();
    pending_.pop();
    now_ms_ = std::max(now_ms_, d.deliver_at_ms);
    ++counters_.delivered;
    on_deliver(d);
  }
  now_ms_ = to_ms;
}

}  // namespace pairguide::netsim
