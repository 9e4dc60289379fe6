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

#include <algorithm>
#include <map>
#include <optional>

namespace pairguide {

namespace {

// One personal listen, [start, end). `end` is the natural end unless the
// listen was cut short.
struct Listen {
  ClipId clip = 0;
  TimeMs start = 0;
  TimeMs end = 0;
};

struct Timeline {
  GroupId group = 0;
  std::vector<Listen> listens;
  std::vector<std::pair<TimeMs, VolumeLevel>> volume;  // change points
};

const Listen* listening_at(const Timeline& tl, TimeMs t) {
  // Listens are disjoint and sorted by start.
  auto it = std::upper_bound(tl.listens.begin(), tl.listens.end(), t,
                             [](TimeMs v, const Listen& l) { return v < l.start; });
  if (it == tl.listens.begin()) return nullptr;
  --it;
  return (it->start <= t && t < it->end) ? &*it : nullptr;
}

VolumeLevel volume_at(const Timeline& tl, TimeMs t) {
  VolumeLevel v = tl.volume.front().second;
  for (const auto& [when, level] : tl.volume) {
    if (when > t) break;
    v = level;
  }
  return v;
}

}  // namespace

OracleResult run_oracle(const Catalog& catalog, const Scenario& scenario,
                        const GainConfig& gains) {
  validate_scenario(catalog, scenario);
  OracleResult result;

  std::map<DeviceId, Timeline> timelines;
  std::map<DeviceId, std::optional<Listen>> current;
  for (const DeviceConfig& cfg : scenario.devices) {
    Timeline tl;
    tl.group = cfg.group_id;
    tl.volume.emplace_back(0, cfg.initial_volume);
    timelines.emplace(cfg.device_id, std::move(tl));
    current.emplace(cfg.device_id, std::nullopt);
  }

  auto close = [&](DeviceId id, TimeMs t) {
    auto& cur = current[id];
    if (!cur) return;
    if (t < cur->end) cur->end = t;
    if (cur->start < cur->end) timelines[id].listens.push_back(*cur);
    cur.reset();
  };
  auto begin = [&](DeviceId id, std::string_view target, TimeMs t) {
    const Target* tgt = catalog.find_target(target);
    const Clip* clip = catalog.find_clip(tgt->clip_id);
    close(id, t);
    current[id] = Listen{clip->clip_id, t, t + clip->duration_ms};
  };

  for (const TraceEvent& e : scenario.events) {
    std::visit(
        [&](const auto& a) {
          using A = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<A, TapAction>) {
            const HitResult hit = catalog.hit_test(a.wall_id, a.point);
            if (const auto* h = std::get_if<Hit>(&hit)) {
              begin(e.device_id, h->target_id, e.t_ms);
            } else {
              const auto& miss = std::get<Miss>(hit);
              result.tap_tips.push_back(TapTip{e.t_ms, e.device_id, a.wall_id,
                                               miss.outline_target_ids,
                                               miss.tip_duration_ms});
            }
          } else if constexpr (std::is_same_v<A, SelectAction>) {
            begin(e.device_id, a.target_id, e.t_ms);
          } else if constexpr (std::is_same_v<A, SetVolumeAction>) {
            timelines[e.device_id].volume.emplace_back(e.t_ms, a.level);
          } else if constexpr (std::is_same_v<A, StopAction>) {
            close(e.device_id, e.t_ms);
          }
        },
        e.action);
  }
  for (auto& [id, cur] : current) close(id, cur ? cur->end : 0);

  // Every instant at which any device's audio can change.
  std::vector<TimeMs> instants{0};
  for (const TraceEvent& e : scenario.events) instants.push_back(e.t_ms);
  for (const auto& [id, tl] : timelines) {
    for (const Listen& l : tl.listens) {
      instants.push_back(l.start);
      instants.push_back(l.end);
    }
  }
  std::sort(instants.begin(), instants.end());
  instants.erase(std::unique(instants.begin(), instants.end()), instants.end());

  LogBuilder builder;
  for (const auto& [id, tl] : timelines) {
    builder.add_device(id);
    for (TimeMs t : instants) {
      if (t >= scenario.duration_ms) break;
      if (const Listen* own = listening_at(tl, t)) {
        builder.observe(id, t, PersonalAudio{own->clip, t - own->start, gains.personal});
        continue;
      }
      const VolumeLevel level = volume_at(tl, t);
      if (level == VolumeLevel::kOff) {
        builder.observe(id, t, Silence{});
        continue;
      }
      const Listen* chosen = nullptr;
      DeviceId chosen_id = 0;
      for (const auto& [other, otl] : timelines) {
        if (other == id || otl.group != tl.group) continue;
        const Listen* l = listening_at(otl, t);
        if (l == nullptr) continue;
        if (chosen == nullptr || l->start < chosen->start ||
            (l->start == chosen->start && other < chosen_id)) {
          chosen = l;
          chosen_id = other;
        }
      }
      if (chosen == nullptr) {
        builder.observe(id, t, Silence{});
      } else {
        const double gain = level == VolumeLevel::kLoud ? gains.personal : gains.quiet;
        builder.observe(id, t,
                        EavesdropAudio{chosen->clip, t - chosen->start, gain, chosen_id});
      }
    }
  }
  result.log = std::move(builder).finish(scenario.duration_ms);
  return result;
}

}  // namespace pairguide
