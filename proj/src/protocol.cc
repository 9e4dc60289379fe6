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

#include "pairguide/protocol.h"

#include <cctype>

namespace pairguide::protocol {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

template <typename T>
T get_be(std::span<const std::uint8_t> bytes, std::size_t offset) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v = static_cast<T>((v << 8) | bytes[offset + i]);
  }
  return v;
}

std::size_t wire_size(MsgType type) {
  switch (type) {
    case MsgType::kHello:
      return kHelloSize;
    case MsgType::kStart:
    case MsgType::kStop:
      return kClipMessageSize;
    case MsgType::kBeacon:
      return kBeaconSize;
  }
  return 0;
}

}  // namespace

MsgType Message::type() const {
  struct Visitor {
    MsgType operator()(const Hello&) const { return MsgType::kHello; }
    MsgType operator()(const Start&) const { return MsgType::kStart; }
    MsgType operator()(const Stop&) const { return MsgType::kStop; }
    MsgType operator()(const Beacon&) const { return MsgType::kBeacon; }
  };
  return std::visit(Visitor{}, payload);
}

std::string_view to_string(DecodeError error) {
  switch (error) {
    case DecodeError::kBadMagic:
      return "bad magic";
    case DecodeError::kUnknownVersion:
      return "unknown version";
    case DecodeError::kUnknownType:
      return "unknown message type";
    case DecodeError::kTruncated:
      return "truncated datagram";
    case DecodeError::kOversized:
      return "oversized datagram";
    case DecodeError::kInvalidPayload:
      return "invalid payload";
  }
  return "?";
}

std::string_view to_string(MsgType type) {
  switch (type) {
    case MsgType::kHello:
      return "HELLO";
    case MsgType::kStart:
      return "START";
    case MsgType::kStop:
      return "STOP";
    case MsgType::kBeacon:
      return "BEACON";
  }
  return "?";
}

bool is_well_formed(const Message& m) {
  if (const auto* s = std::get_if<Start>(&m.payload)) {
    return s->start_ts <= m.send_ts_ms;
  }
  if (const auto* b = std::get_if<Beacon>(&m.payload)) {
    if (!b->playing) return b->clip_id == 0 && b->start_ts == 0;
    return b->start_ts <= m.send_ts_ms;
  }
  return true;
}

std::vector<std::uint8_t> encode(const Message& m) {
  const MsgType type = m.type();
  std::vector<std::uint8_t> out;
  out.reserve(wire_size(type));
  out.push_back(kMagic0);
  out.push_back(kMagic1);
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(type));
  put_u32(out, m.sender_id);
  put_u32(out, m.seq);
  put_u64(out, m.send_ts_ms);
  if (const auto* h = std::get_if<Hello>(&m.payload)) {
    put_u32(out, h->group_id);
  } else if (const auto* s = std::get_if<Start>(&m.payload)) {
    put_u16(out, s->clip_id);
    put_u64(out, s->start_ts);
  } else if (const auto* p = std::get_if<Stop>(&m.payload)) {
    put_u16(out, p->clip_id);
    put_u64(out, p->stop_ts);
  } else {
    const auto& b = std::get<Beacon>(m.payload);
    out.push_back(b.playing ? 1 : 0);
    put_u16(out, b.clip_id);
    put_u64(out, b.start_ts);
  }
  return out;
}

DecodeResult decode(std::span<const std::uint8_t> bytes) {
  // Checks run in header order so that a prefix of a valid datagram reports
  // truncation rather than a field error.
  if (bytes.size() >= 1 && bytes[0] != kMagic0) return DecodeError::kBadMagic;
  if (bytes.size() >= 2 && bytes[1] != kMagic1) return DecodeError::kBadMagic;
  if (bytes.size() >= 3 && bytes[2] != kVersion) {
    return DecodeError::kUnknownVersion;
  }
  if (bytes.size() < 4) return DecodeError::kTruncated;
  const std::uint8_t raw_type = bytes[3];
  if (raw_type < 0x01 || raw_type > 0x04) return DecodeError::kUnknownType;
  const auto type = static_cast<MsgType>(raw_type);
  const std::size_t expected = wire_size(type);
  if (bytes.size() < expected) return DecodeError::kTruncated;
  if (bytes.size() > expected) return DecodeError::kOversized;

  Message m;
  m.sender_id = get_be<std::uint32_t>(bytes, 4);
  m.seq = get_be<std::uint32_t>(bytes, 8);
  m.send_ts_ms = get_be<std::uint64_t>(bytes, 12);
  switch (type) {
    case MsgType::kHello:
      m.payload = Hello{get_be<std::uint32_t>(bytes, 20)};
      break;
    case MsgType::kStart:
      m.payload = Start{get_be<std::uint16_t>(bytes, 20),
                        get_be<std::uint64_t>(bytes, 22)};
      break;
    case MsgType::kStop:
      m.payload = Stop{get_be<std::uint16_t>(bytes, 20),
                       get_be<std::uint64_t>(bytes, 22)};
      break;
    case MsgType::kBeacon: {
      const std::uint8_t playing = bytes[20];
      if (playing > 1) return DecodeError::kInvalidPayload;
      m.payload = Beacon{playing == 1, get_be<std::uint16_t>(bytes, 21),
                         get_be<std::uint64_t>(bytes, 23)};
      break;
    }
  }
  if (!is_well_formed(m)) return DecodeError::kInvalidPayload;
  return m;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

std::optional<std::vector<std::uint8_t>> from_hex(std::string_view text) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::vector<std::uint8_t> out;
  int high = -1;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    const int v = nibble(c);
    if (v < 0) return std::nullopt;
    if (high < 0) {
      high = v;
    } else {
      out.push_back(static_cast<std::uint8_t>((high << 4) | v));
      high = -1;
    }
  }
  if (high >= 0) return std::nullopt;
  return out;
}

bool is_newer(std::optional<Seq> last, Seq seq) {
  return !last.has_value() || seq > *last;
}

FilterVerdict dedup_filter(std::map<DeviceId, Seq>& last_seq_by_sender,
                           const Message& msg) {
  auto it = last_seq_by_sender.find(msg.sender_id);
  if (it != last_seq_by_sender.end() && msg.seq <= it->second) {
    return FilterVerdict::kDrop;
  }
  last_seq_by_sender[msg.sender_id] = msg.seq;
  return FilterVerdict::kAccept;
}

}  // namespace pairguide::protocol
