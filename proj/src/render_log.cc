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

#include "pairguide/render_log.h"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace pairguide {

using ojson = nlohmann::ordered_json;

SourceKind source_kind(const RenderDecision& d) {
  if (std::holds_alternative<PersonalAudio>(d)) return SourceKind::kPersonal;
  if (std::holds_alternative<EavesdropAudio>(d)) return SourceKind::kEavesdrop;
  return SourceKind::kSilence;
}

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::kSilence:
      return "silence";
    case SourceKind::kPersonal:
      return "personal";
    case SourceKind::kEavesdrop:
      return "eavesdrop";
  }
  return "?";
}

RenderDecision decision_at(const Segment& segment, TimeMs t) {
  const DurationMs advance = t - segment.t0;
  RenderDecision d = segment.decision;
  if (auto* p = std::get_if<PersonalAudio>(&d)) p->offset_ms += advance;
  if (auto* e = std::get_if<EavesdropAudio>(&d)) e->offset_ms += advance;
  return d;
}

bool continues(const Segment& open, TimeMs t, const RenderDecision& next) {
  return decision_at(open, t) == next;
}

bool same_audio(const RenderDecision& a, const RenderDecision& b) {
  if (a.index() != b.index()) return false;
  if (const auto* pa = std::get_if<PersonalAudio>(&a)) {
    return *pa == std::get<PersonalAudio>(b);
  }
  if (const auto* ea = std::get_if<EavesdropAudio>(&a)) {
    const auto& eb = std::get<EavesdropAudio>(b);
    return ea->clip_id == eb.clip_id && ea->offset_ms == eb.offset_ms &&
           ea->gain == eb.gain;
  }
  return true;
}

void LogBuilder::add_device(DeviceId device) { devices_.try_emplace(device); }

void LogBuilder::observe(DeviceId device, TimeMs t, const RenderDecision& decision) {
  auto& segs = devices_[device];
  if (!segs.empty()) {
    Segment& open = segs.back();
    if (t < open.t0) throw LogError("observation before the open segment");
    if (t == open.t0) {
      open.decision = decision;
      // A replacement may now extend the previous segment.
      if (segs.size() >= 2 && continues(segs[segs.size() - 2], t, decision)) {
        segs.pop_back();
      }
      return;
    }
    if (continues(open, t, decision)) return;
    open.t1 = t;
  }
  segs.push_back(Segment{t, t, decision});
}

RenderLog LogBuilder::finish(DurationMs duration_ms) && {
  RenderLog log;
  log.duration_ms = duration_ms;
  for (auto& [id, segs] : devices_) {
    if (segs.empty()) segs.push_back(Segment{0, 0, Silence{}});
    segs.back().t1 = duration_ms;
    // Observations at or after the end are outside the log.
    while (segs.size() > 1 && segs.back().t0 >= duration_ms) {
      segs.pop_back();
      segs.back().t1 = duration_ms;
    }
  }
  log.devices = std::move(devices_);
  return log;
}

std::optional<std::string> check_partition(const RenderLog& log) {
  for (const auto& [id, segs] : log.devices) {
    const std::string who = "device " + std::to_string(id) + ": ";
    if (segs.empty()) return who + "no segments";
    if (segs.front().t0 != 0) return who + "first segment does not start at 0";
    if (segs.back().t1 != log.duration_ms) return who + "last segment does not end at duration";
    for (std::size_t i = 0; i < segs.size(); ++i) {
      if (segs[i].t0 >= segs[i].t1) {
        return who + "empty segment at " + std::to_string(segs[i].t0);
      }
      if (i > 0) {
        if (segs[i].t0 != segs[i - 1].t1) {
          return who + "gap or overlap at " + std::to_string(segs[i].t0);
        }
        if (continues(segs[i - 1], segs[i].t0, segs[i].decision)) {
          return who + "unmerged continuation at " + std::to_string(segs[i].t0);
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

ojson segment_to_json(DeviceId device, const Segment& s) {
  ojson j;
  j["device"] = device;
  j["t0"] = s.t0;
  j["t1"] = s.t1;
  j["source"] = std::string(to_string(source_kind(s.decision)));
  if (const auto* p = std::get_if<PersonalAudio>(&s.decision)) {
    j["clip"] = p->clip_id;
    j["offset0"] = p->offset_ms;
    j["gain"] = p->gain;
    j["reverb"] = false;
    j["from"] = nullptr;
  } else if (const auto* e = std::get_if<EavesdropAudio>(&s.decision)) {
    j["clip"] = e->clip_id;
    j["offset0"] = e->offset_ms;
    j["gain"] = e->gain;
    j["reverb"] = true;
    j["from"] = e->source_device;
  } else {
    j["clip"] = nullptr;
    j["offset0"] = nullptr;
    j["gain"] = 0.0;
    j["reverb"] = false;
    j["from"] = nullptr;
  }
  return j;
}

RenderDecision decision_from_json(const ojson& j) {
  const auto source = j.at("source").get<std::string>();
  if (source == "silence") return Silence{};
  const auto clip = j.at("clip").get<ClipId>();
  const auto offset = j.at("offset0").get<DurationMs>();
  const auto gain = j.at("gain").get<double>();
  const bool reverb_flag = j.at("reverb").get<bool>();
  if (source == "personal") {
    if (reverb_flag) throw LogError("personal segment with reverb");
    return PersonalAudio{clip, offset, gain};
  }
  if (source == "eavesdrop") {
    if (!reverb_flag) throw LogError("eavesdrop segment without reverb");
    return EavesdropAudio{clip, offset, gain, j.at("from").get<DeviceId>()};
  }
  throw LogError("unknown source '" + source + "'");
}

}  // namespace

std::string to_jsonl(const RenderLog& log) {
  std::string out;
  for (const auto& [id, segs] : log.devices) {
    for (const Segment& s : segs) {
      out += segment_to_json(id, s).dump();
      out += '\n';
    }
  }
  return out;
}

RenderLog parse_jsonl(std::string_view text) {
  RenderLog log;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const ojson j = ojson::parse(line);
      Segment s;
      s.t0 = j.at("t0").get<TimeMs>();
      s.t1 = j.at("t1").get<TimeMs>();
      s.decision = decision_from_json(j);
      log.duration_ms = std::max(log.duration_ms, s.t1);
      log.devices[j.at("device").get<DeviceId>()].push_back(std::move(s));
    } catch (const ojson::exception& e) {
      throw LogError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const LogError& e) {
      throw LogError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (auto& [id, segs] : log.devices) {
    std::sort(segs.begin(), segs.end(),
              [](const Segment& a, const Segment& b) { return a.t0 < b.t0; });
  }
  return log;
}

std::vector<Mismatch> diff_logs(const RenderLog& a, const RenderLog& b) {
  if (a.duration_ms != b.duration_ms) {
    throw LogError("durations differ: " + std::to_string(a.duration_ms) + " vs " +
                   std::to_string(b.duration_ms));
  }
  std::vector<DeviceId> ids_a, ids_b;
  for (const auto& [id, _] : a.devices) ids_a.push_back(id);
  for (const auto& [id, _] : b.devices) ids_b.push_back(id);
  if (ids_a != ids_b) throw LogError("device sets differ");

  std::vector<Mismatch> out;
  for (const auto& [id, segs_a] : a.devices) {
    const auto& segs_b = b.devices.at(id);
    std::vector<TimeMs> cuts;
    for (const Segment& s : segs_a) cuts.push_back(s.t0);
    for (const Segment& s : segs_b) cuts.push_back(s.t0);
    cuts.push_back(a.duration_ms);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::size_t ia = 0, ib = 0;
    std::optional<Mismatch> open;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const TimeMs t = cuts[k];
      while (ia + 1 < segs_a.size() && segs_a[ia].t1 <= t) ++ia;
      while (ib + 1 < segs_b.size() && segs_b[ib].t1 <= t) ++ib;
      const bool covered = ia < segs_a.size() && ib < segs_b.size() &&
                           segs_a[ia].t0 <= t && t < segs_a[ia].t1 &&
                           segs_b[ib].t0 <= t && t < segs_b[ib].t1;
      const bool differs =
          !covered || !same_audio(decision_at(segs_a[ia], t), decision_at(segs_b[ib], t));
      if (differs) {
        if (open && open->t1 == t) {
          open->t1 = cuts[k + 1];
        } else {
          if (open) out.push_back(*open);
          open = Mismatch{id, t, cuts[k + 1]};
        }
      }
    }
    if (open) out.push_back(*open);
  }
  return out;
}

}  // namespace pairguide
