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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pairguide/types.h"

namespace pairguide::protocol {

// Datagram layout, all integers big-endian:
//
//   0..1   magic 0x53 0x56
//   2      version 0x01
//   3      type (HELLO=1, START=2, STOP=3, BEACON=4)
//   4..7   sender_id
//   8..11  seq
//   12..19 send_ts_ms
//   20..   payload
//            HELLO   group_id u32                          (24 bytes total)
//            START   clip_id u16, start_ts u64             (30 bytes total)
//            STOP    clip_id u16, stop_ts u64              (30 bytes total)
//            BEACON  playing u8, clip_id u16, start_ts u64 (31 bytes total)
inline constexpr std::uint8_t kMagic0 = 0x53;
inline constexpr std::uint8_t kMagic1 = 0x56;
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kHeaderSize = 20;
inline constexpr std::size_t kHelloSize = 24;
inline constexpr std::size_t kClipMessageSize = 30;
inline constexpr std::size_t kBeaconSize = 31;
inline constexpr std::size_t kMaxDatagramSize = kBeaconSize;

enum class MsgType : std::uint8_t {
  kHello = 0x01,
  kStart = 0x02,
  kStop = 0x03,
  kBeacon = 0x04,
};

struct Hello {
  GroupId group_id = 0;
  bool operator==(const Hello&) const = default;
};

struct Start {
  ClipId clip_id = 0;
  TimeMs start_ts = 0;
  bool operator==(const Start&) const = default;
};

struct Stop {
  ClipId clip_id = 0;
  TimeMs stop_ts = 0;
  bool operator==(const Stop&) const = default;
};

// Full personal-playback snapshot. An idle beacon always carries clip 0 and
// start_ts 0.
struct Beacon {
  bool playing = false;
  ClipId clip_id = 0;
  TimeMs start_ts = 0;

  static Beacon idle() { return {}; }
  static Beacon active(ClipId clip, TimeMs start) { return {true, clip, start}; }
  bool operator==(const Beacon&) const = default;
};

using Payload = std::variant<Hello, Start, Stop, Beacon>;

struct Message {
  DeviceId sender_id = 0;
  Seq seq = 0;
  TimeMs send_ts_ms = 0;
  Payload payload;

  MsgType type() const;
  bool operator==(const Message&) const = default;
};

enum class DecodeError {
  kBadMagic,
  kUnknownVersion,
  kUnknownType,
  kTruncated,
  kOversized,
  // Well-framed but semantically impossible: a BEACON playing flag other
  // than 0/1, an idle BEACON with nonzero fields, or a start_ts later than
  // the send timestamp.
  kInvalidPayload,
};

std::string_view to_string(DecodeError error);
std::string_view to_string(MsgType type);

// Holds either a decoded message or the reason the datagram was rejected.
class DecodeResult {
 public:
  DecodeResult(Message m) : value_(std::move(m)) {}  // NOLINT
  DecodeResult(DecodeError e) : value_(e) {}         // NOLINT

  bool ok() const { return std::holds_alternative<Message>(value_); }
  explicit operator bool() const { return ok(); }
  const Message& message() const { return std::get<Message>(value_); }
  DecodeError error() const { return std::get<DecodeError>(value_); }

 private:
  std::variant<Message, DecodeError> value_;
};

// Semantic validity of a message as a sender may emit it.
bool is_well_formed(const Message& m);

std::vector<std::uint8_t> encode(const Message& m);
DecodeResult decode(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
// Accepts upper or lower case, ignores whitespace. Returns nullopt on odd
// length or non-hex characters.
std::optional<std::vector<std::uint8_t>> from_hex(std::string_view text);

// Per-sender monotone sequence filter. Absent senders accept any seq.
enum class FilterVerdict { kAccept, kDrop };

bool is_newer(std::optional<Seq> last, Seq seq);
FilterVerdict dedup_filter(std::map<DeviceId, Seq>& last_seq_by_sender,
                           const Message& msg);

}  // namespace pairguide::protocol
