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

#include "pairguide/simulation.h"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace pairguide {

namespace {

class Simulator {
 public:
  Simulator(const Catalog& catalog, const Scenario& scenario,
            const SimulationOptions& options)
      : catalog_(catalog), scenario_(scenario), options_(options),
        queue_(scenario.network) {
    for (const DeviceConfig& cfg : scenario.devices) {
      const auto peers = companions_of(scenario, cfg.device_id);
      devices_.emplace(cfg.device_id,
                       DeviceState::make(cfg.device_id, cfg.group_id, cfg.initial_wall,
                                         cfg.initial_volume, peers));
      peers_.emplace(cfg.device_id, peers);
      builder_.add_device(cfg.device_id);
    }
  }

  SimulationResult run() {
    const TimeMs end = scenario_.duration_ms;
    const DurationMs period = scenario_.network.beacon_period_ms;
    TimeMs next_beacon = period;
    std::size_t next_event = 0;

    for (auto& [id, state] : devices_) emit(hello(state, 0));

    TimeMs t = 0;
    while (true) {
      while (next_event < scenario_.events.size() &&
             scenario_.events[next_event].t_ms == t) {
        apply(scenario_.events[next_event++]);
      }
      if (t == next_beacon) {
        for (auto& [id, state] : devices_) emit(beacon(state, t));
        next_beacon += period;
      }
      queue_.advance(t, [this](const netsim::Delivery& d) { deliver(d); });
      sample(t);

      TimeMs next = end;
      if (next_event < scenario_.events.size()) {
        next = std::min(next, scenario_.events[next_event].t_ms);
      }
      next = std::min(next, next_beacon);
      if (auto due = queue_.next_delivery()) next = std::min(next, *due);
      for (const auto& [id, state] : devices_) {
        if (auto clip_end = next_clip_end(state, catalog_, t)) {
          next = std::min(next, *clip_end);
        }
      }
      if (next >= end) break;
      t = next;
    }

    result_.log = std::move(builder_).finish(end);
    result_.metrics =
        compute_metrics(result_.log, catalog_, options_.gap_threshold_ms);
    result_.counters = queue_.counters();
    return std::move(result_);
  }

 private:
  void emit(Transition&& tr) {
    const DeviceId id = tr.state.device_id;
    devices_[id] = std::move(tr.state);
    for (protocol::Message& m : tr.outgoing) {
      auto bytes = protocol::encode(m);
      queue_.send(id, bytes, peers_[id], m.send_ts_ms);
      result_.messages.push_back(SentMessage{m.send_ts_ms, std::move(m), std::move(bytes)});
    }
  }

  void apply(const TraceEvent& e) {
    DeviceState& state = devices_.at(e.device_id);
    const TimeMs t = e.t_ms;
    if (const auto* tap = std::get_if<TapAction>(&e.action)) {
      const HitResult hit = catalog_.hit_test(tap->wall_id, tap->point);
      if (const auto* h = std::get_if<Hit>(&hit)) {
        emit(select_target(state, catalog_, h->target_id, t));
      } else {
        const auto& miss = std::get<Miss>(hit);
        result_.tap_tips.push_back(TapTip{t, e.device_id, tap->wall_id,
                                          miss.outline_target_ids,
                                          miss.tip_duration_ms});
      }
    } else if (const auto* sel = std::get_if<SelectAction>(&e.action)) {
      emit(select_target(state, catalog_, sel->target_id, t));
    } else if (const auto* vol = std::get_if<SetVolumeAction>(&e.action)) {
      state = set_eavesdrop_volume(state, vol->level);
    } else if (const auto* sw = std::get_if<SwitchWallAction>(&e.action)) {
      state = switch_wall(state, sw->wall_id);
    } else {
      emit(stop_playback(state, t));
    }
  }

  void deliver(const netsim::Delivery& d) {
    const TimeMs now = queue_.now();
    const protocol::DecodeResult decoded = protocol::decode(d.bytes);
    if (!decoded) {
      result_.diagnostics.push_back("t=" + std::to_string(now) + " device " +
                                    std::to_string(d.dest_device) + ": " +
                                    std::string(protocol::to_string(decoded.error())));
      return;
    }
    const protocol::Message& m = decoded.message();
    auto it = devices_.find(d.dest_device);
    if (it == devices_.end()) return;
    HandleResult r = handle_message(it->second, m, now);
    it->second = std::move(r.state);
    result_.receipts.push_back(Receipt{now, d.dest_device, m.sender_id, m.seq, r.status});
  }

  void sample(TimeMs t) {
    for (const auto& [id, state] : devices_) {
      std::vector<ClipId> unknown;
      builder_.observe(id, t, render_at(state, catalog_, t, options_.gains, &unknown));
      for (ClipId c : unknown) {
        result_.diagnostics.push_back("t=" + std::to_string(t) + " device " +
                                      std::to_string(id) + ": companion clip " +
                                      std::to_string(c) + " not in catalog");
      }
    }
  }

  const Catalog& catalog_;
  const Scenario& scenario_;
  SimulationOptions options_;
  netsim::EventQueue queue_;
  std::map<DeviceId, DeviceState> devices_;
  std::map<DeviceId, std::vector<DeviceId>> peers_;
  LogBuilder builder_;
  SimulationResult result_;
};

}  // namespace

SimulationResult run_simulation(const Catalog& catalog, const Scenario& scenario,
                                const SimulationOptions& options) {
  validate_scenario(catalog, scenario);
  return Simulator(catalog, scenario, options).run();
}

std::string message_trace_jsonl(const std::vector<SentMessage>& messages) {
  std::string out;
  for (const SentMessage& m : messages) {
    nlohmann::ordered_json j;
    j["t"] = m.t_ms;
    j["from"] = m.message.sender_id;
    j["seq"] = m.message.seq;
    j["type"] = std::string(protocol::to_string(m.message.type()));
    j["hex"] = protocol::to_hex(m.bytes);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string tap_tips_jsonl(const std::vector<TapTip>& tips) {
  std::string out;
  for (const TapTip& tip : tips) {
    nlohmann::ordered_json j;
    j["t"] = tip.t_ms;
    j["device"] = tip.device;
    j["wall"] = tip.wall_id;
    j["outline"] = tip.outline_target_ids;
    j["tip_ms"] = tip.tip_duration_ms;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace pairguide
