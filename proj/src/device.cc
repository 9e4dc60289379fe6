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

#include "pairguide/device.h"

#include <algorithm>
#include <cctype>

namespace pairguide {

using protocol::Message;

std::string_view to_string(VolumeLevel level) {
  switch (level) {
    case VolumeLevel::kOff:
      return "off";
    case VolumeLevel::kQuiet:
      return "quiet";
    case VolumeLevel::kLoud:
      return "loud";
  }
  return "?";
}

std::optional<VolumeLevel> parse_volume(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "off") return VolumeLevel::kOff;
  if (lower == "quiet") return VolumeLevel::kQuiet;
  if (lower == "loud") return VolumeLevel::kLoud;
  return std::nullopt;
}

double GainConfig::eavesdrop(VolumeLevel level) const {
  switch (level) {
    case VolumeLevel::kOff:
      return 0.0;
    case VolumeLevel::kQuiet:
      return quiet;
    case VolumeLevel::kLoud:
      return personal;
  }
  return 0.0;
}

DeviceState DeviceState::make(DeviceId id, GroupId group, std::string wall,
                              VolumeLevel volume,
                              const std::vector<DeviceId>& companion_ids) {
  DeviceState s;
  s.device_id = id;
  s.group_id = group;
  s.current_wall = std::move(wall);
  s.eavesdrop_volume = volume;
  for (DeviceId c : companion_ids) {
    if (c != id) s.companions.emplace(c, CompanionView{});
  }
  return s;
}

ClipPosition clip_offset(TimeMs start_ts, TimeMs now, DurationMs duration_ms) {
  if (now < start_ts) {
    throw std::invalid_argument("future start: start_ts " +
                                std::to_string(start_ts) + " > now " +
                                std::to_string(now));
  }
  const DurationMs elapsed = now - start_ts;
  if (elapsed < duration_ms) return ClipActive{elapsed};
  return ClipEnded{};
}

namespace {

Message stamp(DeviceState& s, TimeMs now, protocol::Payload payload) {
  Message m;
  m.sender_id = s.device_id;
  m.seq = s.next_seq++;
  m.send_ts_ms = now;
  m.payload = std::move(payload);
  return m;
}

}  // namespace

Transition hello(const DeviceState& state, TimeMs now) {
  Transition t{state, {}};
  t.outgoing.push_back(stamp(t.state, now, protocol::Hello{state.group_id}));
  return t;
}

Transition select_target(const DeviceState& state, const Catalog& catalog,
                         std::string_view target_id, TimeMs now) {
  const Clip& clip = resolve_clip(catalog, target_id);
  Transition t{state, {}};
  if (t.state.personal && t.state.personal->active_at(now)) {
    t.outgoing.push_back(
        stamp(t.state, now, protocol::Stop{t.state.personal->clip_id, now}));
  }
  t.state.personal = PersonalPlayback{clip.clip_id, now, clip.duration_ms};
  t.outgoing.push_back(stamp(t.state, now, protocol::Start{clip.clip_id, now}));
  return t;
}

Transition stop_playback(const DeviceState& state, TimeMs now) {
  Transition t{state, {}};
  // A clip past its end has already stopped implicitly.
  if (!t.state.personal || !t.state.personal->active_at(now)) return t;
  const ClipId clip = t.state.personal->clip_id;
  t.state.personal.reset();
  t.outgoing.push_back(stamp(t.state, now, protocol::Stop{clip, now}));
  return t;
}

DeviceState set_eavesdrop_volume(const DeviceState& state, VolumeLevel level) {
  DeviceState s = state;
  s.eavesdrop_volume = level;
  return s;
}

DeviceState switch_wall(const DeviceState& state, std::string wall_id) {
  DeviceState s = state;
  s.current_wall = std::move(wall_id);
  return s;
}

Transition beacon(const DeviceState& state, TimeMs now) {
  Transition t{state, {}};
  protocol::Beacon payload = protocol::Beacon::idle();
  if (state.personal && state.personal->active_at(now)) {
    payload = protocol::Beacon::active(state.personal->clip_id,
                                       state.personal->start_ts);
  }
  t.outgoing.push_back(stamp(t.state, now, payload));
  return t;
}

std::string_view to_string(HandleStatus status) {
  switch (status) {
    case HandleStatus::kApplied:
      return "applied";
    case HandleStatus::kDuplicate:
      return "duplicate";
    case HandleStatus::kFromSelf:
      return "from-self";
    case HandleStatus::kNotMember:
      return "not-member";
    case HandleStatus::kForeignGroup:
      return "foreign-group";
    case HandleStatus::kMalformed:
      return "malformed";
  }
  return "?";
}

HandleResult handle_message(const DeviceState& state, const Message& msg,
                            TimeMs now) {
  if (msg.sender_id == state.device_id) return {state, HandleStatus::kFromSelf};
  if (!protocol::is_well_formed(msg) || msg.send_ts_ms > now) {
    return {state, HandleStatus::kMalformed};
  }

  auto it = state.companions.find(msg.sender_id);
  if (const auto* h = std::get_if<protocol::Hello>(&msg.payload)) {
    if (h->group_id != state.group_id) return {state, HandleStatus::kForeignGroup};
    if (it != state.companions.end() &&
        !protocol::is_newer(it->second.last_seq, msg.seq)) {
      return {state, HandleStatus::kDuplicate};
    }
    HandleResult r{state, HandleStatus::kApplied};
    r.state.companions[msg.sender_id].last_seq = msg.seq;
    return r;
  }

  if (it == state.companions.end()) return {state, HandleStatus::kNotMember};
  if (!protocol::is_newer(it->second.last_seq, msg.seq)) {
    return {state, HandleStatus::kDuplicate};
  }

  HandleResult r{state, HandleStatus::kApplied};
  CompanionView& view = r.state.companions[msg.sender_id];
  view.last_seq = msg.seq;
  if (const auto* s = std::get_if<protocol::Start>(&msg.payload)) {
    view.playback = CompanionPlayback{s->clip_id, s->start_ts};
  } else if (std::holds_alternative<protocol::Stop>(msg.payload)) {
    view.playback.reset();
  } else if (const auto* b = std::get_if<protocol::Beacon>(&msg.payload)) {
    if (b->playing) {
      view.playback = CompanionPlayback{b->clip_id, b->start_ts};
    } else {
      view.playback.reset();
    }
  }
  return r;
}

RenderDecision render_at(const DeviceState& state, const Catalog& catalog,
                         TimeMs now, const GainConfig& gains,
                         std::vector<ClipId>* unknown_clips) {
  if (state.personal && state.personal->active_at(now)) {
    return PersonalAudio{state.personal->clip_id, now - state.personal->start_ts,
                         gains.personal};
  }
  if (state.eavesdrop_volume == VolumeLevel::kOff) return Silence{};

  const EavesdropAudio* best = nullptr;
  TimeMs best_start = 0;
  EavesdropAudio candidate;
  for (const auto& [id, view] : state.companions) {
    if (!view.playback || view.playback->start_ts > now) continue;
    const Clip* clip = catalog.find_clip(view.playback->clip_id);
    if (clip == nullptr) {
      if (unknown_clips) unknown_clips->push_back(view.playback->clip_id);
      continue;
    }
    const auto pos = clip_offset(view.playback->start_ts, now, clip->duration_ms);
    const auto* active = std::get_if<ClipActive>(&pos);
    if (active == nullptr) continue;
    // Map iteration is ascending by id, so strict less keeps the smallest id
    // on equal starts.
    if (best == nullptr || view.playback->start_ts < best_start) {
      candidate = EavesdropAudio{clip->clip_id, active->offset_ms,
                                 gains.eavesdrop(state.eavesdrop_volume), id};
      best = &candidate;
      best_start = view.playback->start_ts;
    }
  }
  if (best == nullptr) return Silence{};
  return *best;
}

std::optional<TimeMs> next_clip_end(const DeviceState& state,
                                    const Catalog& catalog, TimeMs now) {
  std::optional<TimeMs> next;
  auto consider = [&](TimeMs end) {
    if (end > now && (!next || end < *next)) next = end;
  };
  if (state.personal) consider(state.personal->end_ts());
  for (const auto& [id, view] : state.companions) {
    if (!view.playback) continue;
    if (const Clip* clip = catalog.find_clip(view.playback->clip_id)) {
      consider(view.playback->start_ts + clip->duration_ms);
    }
  }
  return next;
}

}  // namespace pairguide
