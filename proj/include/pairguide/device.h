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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pairguide/catalog.h"
#include "pairguide/protocol.h"
#include "pairguide/types.h"

namespace pairguide {

enum class VolumeLevel { kOff, kQuiet, kLoud };

std::string_view to_string(VolumeLevel level);
std::optional<VolumeLevel> parse_volume(std::string_view text);

// Earphone gains. Loud eavesdropping always uses the personal gain; only the
// Quiet level is independently tunable.
struct GainConfig {
  double personal = 1.0;
  double quiet = 0.5;

  // 0 for Off.
  double eavesdrop(VolumeLevel level) const;
};

struct PersonalPlayback {
  ClipId clip_id = 0;
  TimeMs start_ts = 0;
  DurationMs duration_ms = 0;

  // Active on [start_ts, start_ts + duration_ms).
  bool active_at(TimeMs now) const {
    return now >= start_ts && now - start_ts < duration_ms;
  }
  TimeMs end_ts() const { return start_ts + duration_ms; }
  bool operator==(const PersonalPlayback&) const = default;
};

// A companion's playback as learned from its messages. The duration is not
// carried on the wire; receivers look it up in their own catalog.
struct CompanionPlayback {
  ClipId clip_id = 0;
  TimeMs start_ts = 0;
  bool operator==(const CompanionPlayback&) const = default;
};

struct CompanionView {
  std::optional<CompanionPlayback> playback;
  std::optional<Seq> last_seq;
  bool operator==(const CompanionView&) const = default;
};

struct DeviceState {
  DeviceId device_id = 0;
  GroupId group_id = 0;
  std::string current_wall;
  std::optional<PersonalPlayback> personal;
  VolumeLevel eavesdrop_volume = VolumeLevel::kQuiet;
  std::map<DeviceId, CompanionView> companions;
  Seq next_seq = 1;

  // Pre-paired device: `companion_ids` become members immediately (own id is
  // skipped).
  static DeviceState make(DeviceId id, GroupId group, std::string wall,
                          VolumeLevel volume = VolumeLevel::kQuiet,
                          const std::vector<DeviceId>& companion_ids = {});

  bool operator==(const DeviceState&) const = default;
};

struct Silence {
  bool operator==(const Silence&) const = default;
};

struct PersonalAudio {
  ClipId clip_id = 0;
  DurationMs offset_ms = 0;
  double gain = 1.0;
  bool operator==(const PersonalAudio&) const = default;
};

struct EavesdropAudio {
  ClipId clip_id = 0;
  DurationMs offset_ms = 0;
  double gain = 0.5;
  DeviceId source_device = 0;
  bool operator==(const EavesdropAudio&) const = default;
};

// What the single earphone plays at one instant. Eavesdropped audio is the
// only variant rendered with reverberation.
using RenderDecision = std::variant<Silence, PersonalAudio, EavesdropAudio>;

inline bool reverb(const RenderDecision& d) {
  return std::holds_alternative<EavesdropAudio>(d);
}

struct ClipActive {
  DurationMs offset_ms = 0;
  bool operator==(const ClipActive&) const = default;
};
struct ClipEnded {
  bool operator==(const ClipEnded&) const = default;
};
using ClipPosition = std::variant<ClipActive, ClipEnded>;

// Throws std::invalid_argument when now < start_ts (future start).
ClipPosition clip_offset(TimeMs start_ts, TimeMs now, DurationMs duration_ms);

struct Transition {
  DeviceState state;
  std::vector<protocol::Message> outgoing;
};

// Membership announcement; sent once when a device joins.
Transition hello(const DeviceState& state, TimeMs now);

// Starts the target's clip from offset 0, interrupting any active personal
// clip with a STOP first. Throws LookupError for unknown targets.
Transition select_target(const DeviceState& state, const Catalog& catalog,
                         std::string_view target_id, TimeMs now);

Transition stop_playback(const DeviceState& state, TimeMs now);

// Receiver-side only; never produces messages.
DeviceState set_eavesdrop_volume(const DeviceState& state, VolumeLevel level);

DeviceState switch_wall(const DeviceState& state, std::string wall_id);

// Full personal-state snapshot for loss recovery.
Transition beacon(const DeviceState& state, TimeMs now);

enum class HandleStatus {
  kApplied,
  kDuplicate,     // seq not newer than the last accepted from that sender
  kFromSelf,
  kNotMember,     // sender never joined this device's group
  kForeignGroup,  // HELLO for another group
  kMalformed,     // payload inconsistent, or timestamps in the future
};

std::string_view to_string(HandleStatus status);

struct HandleResult {
  DeviceState state;
  HandleStatus status = HandleStatus::kApplied;
};

HandleResult handle_message(const DeviceState& state,
                            const protocol::Message& msg, TimeMs now);

// Priority: an active personal clip, else (volume not Off) the active
// companion clip with the earliest start (ties to the smallest device id),
// else silence. Companions whose clip is missing from `catalog` are skipped
// and appended to `unknown_clips` when provided.
RenderDecision render_at(const DeviceState& state, const Catalog& catalog,
                         TimeMs now, const GainConfig& gains = {},
                         std::vector<ClipId>* unknown_clips = nullptr);

// Earliest instant after `now` at which render_at may change without any
// new input (a personal or tracked companion clip reaching its end).
std::optional<TimeMs> next_clip_end(const DeviceState& state,
                                    const Catalog& catalog, TimeMs now);

}  // namespace pairguide
