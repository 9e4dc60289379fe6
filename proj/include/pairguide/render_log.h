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
#include <vector>

#include "pairguide/device.h"
#include "pairguide/types.h"

namespace pairguide {

enum class SourceKind { kSilence, kPersonal, kEavesdrop };

SourceKind source_kind(const RenderDecision& d);
std::string_view to_string(SourceKind kind);

// [t0, t1) during which the earphone plays `decision` as evaluated at t0; any
// offset advances one millisecond per millisecond across the segment.
struct Segment {
  TimeMs t0 = 0;
  TimeMs t1 = 0;
  RenderDecision decision;
  bool operator==(const Segment&) const = default;
};

// `decision` evaluated at `t` inside `segment` (offset advanced).
RenderDecision decision_at(const Segment& segment, TimeMs t);

// True when `next`, observed at `t`, is the same audio as `open` carried
// forward to `t`.
bool continues(const Segment& open, TimeMs t, const RenderDecision& next);

// Audible equality: source kind, clip, gain, reverb and offset. Which
// companion an eavesdropped clip came from is not audible and is ignored.
bool same_audio(const RenderDecision& a, const RenderDecision& b);

struct RenderLog {
  DurationMs duration_ms = 0;
  std::map<DeviceId, std::vector<Segment>> devices;
  bool operator==(const RenderLog&) const = default;
};

class LogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accumulates observations into maximal segments. Observations for a device
// must arrive in nondecreasing time; an observation at the same instant as
// the open segment's start replaces it.
class LogBuilder {
 public:
  void add_device(DeviceId device);
  void observe(DeviceId device, TimeMs t, const RenderDecision& decision);
  RenderLog finish(DurationMs duration_ms) &&;

 private:
  std::map<DeviceId, std::vector<Segment>> devices_;
};

// nullopt when every device's segments tile [0, duration_ms) in order with
// no empty segments and no two adjacent segments that should have merged.
std::optional<std::string> check_partition(const RenderLog& log);

// One JSON object per segment, devices ascending then time ascending:
// {"device","t0","t1","source","clip","offset0","gain","reverb","from"}.
std::string to_jsonl(const RenderLog& log);
// Inverse of to_jsonl. The duration is taken as the largest t1. Throws
// LogError on malformed input.
RenderLog parse_jsonl(std::string_view text);

struct Mismatch {
  DeviceId device = 0;
  TimeMs t0 = 0;
  TimeMs t1 = 0;
  DurationMs length() const { return t1 - t0; }
  bool operator==(const Mismatch&) const = default;
};

// Maximal intervals where the two logs disagree on source kind, clip, gain,
// reverb, or offset (compared exactly; see same_audio). Empty iff equivalent. Throws
// LogError when device sets or durations differ.
std::vector<Mismatch> diff_logs(const RenderLog& a, const RenderLog& b);

}  // namespace pairguide
