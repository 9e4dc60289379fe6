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

#include "pairguide/metrics.h"

#include <algorithm>
#include <optional>

#include "json.hpp"

namespace pairguide {

namespace {

std::optional<ClipId> audible_clip(const RenderDecision& d) {
  if (const auto* p = std::get_if<PersonalAudio>(&d)) return p->clip_id;
  if (const auto* e = std::get_if<EavesdropAudio>(&d)) return e->clip_id;
  return std::nullopt;
}

DurationMs offset_of(const RenderDecision& d) {
  if (const auto* p = std::get_if<PersonalAudio>(&d)) return p->offset_ms;
  if (const auto* e = std::get_if<EavesdropAudio>(&d)) return e->offset_ms;
  return 0;
}

PairMetrics pair_metrics(DeviceId a, const std::vector<Segment>& sa, DeviceId b,
                         const std::vector<Segment>& sb, DurationMs duration,
                         DurationMs gap_threshold) {
  PairMetrics pm;
  pm.a = a;
  pm.b = b;

  // Two-pointer sweep over the overlap of both partitions.
  struct Interval {
    TimeMs t0, t1;
  };
  std::vector<Interval> shared;
  std::size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    const TimeMs lo = std::max(sa[i].t0, sb[j].t0);
    const TimeMs hi = std::min(sa[i].t1, sb[j].t1);
    if (lo < hi) {
      const RenderDecision da = decision_at(sa[i], lo);
      const RenderDecision db = decision_at(sb[j], lo);
      const auto ca = audible_clip(da);
      const auto cb = audible_clip(db);
      if (ca && cb && *ca == *cb) {
        pm.mutual_ms += hi - lo;
        const DurationMs oa = offset_of(da), ob = offset_of(db);
        pm.max_mutual_offset_skew_ms =
            std::max(pm.max_mutual_offset_skew_ms, oa > ob ? oa - ob : ob - oa);
        if (!shared.empty() && shared.back().t1 == lo) {
          shared.back().t1 = hi;
        } else {
          shared.push_back({lo, hi});
        }
      }
    }
    if (sa[i].t1 < sb[j].t1) {
      ++i;
    } else if (sb[j].t1 < sa[i].t1) {
      ++j;
    } else {
      ++i;
      ++j;
    }
  }

  for (std::size_t k = 0; k < shared.size(); ++k) {
    if (k == 0 || shared[k].t0 - shared[k - 1].t1 > gap_threshold) ++pm.episodes;
  }
  pm.mutual_fraction =
      duration == 0 ? 0.0
                    : static_cast<double>(pm.mutual_ms) / static_cast<double>(duration);
  return pm;
}

}  // namespace

Metrics compute_metrics(const RenderLog& log, const Catalog& catalog,
                        DurationMs gap_threshold_ms) {
  Metrics m;
  m.duration_ms = log.duration_ms;
  m.gap_threshold_ms = gap_threshold_ms;
  for (const auto& [id, segs] : log.devices) {
    DeviceMetrics dm;
    for (const Segment& s : segs) {
      const DurationMs len = s.t1 - s.t0;
      switch (source_kind(s.decision)) {
        case SourceKind::kPersonal: {
          dm.personal_listen_ms += len;
          const auto& p = std::get<PersonalAudio>(s.decision);
          const Clip* clip = catalog.find_clip(p.clip_id);
          if (clip != nullptr && s.t1 < log.duration_ms &&
              p.offset_ms + len < clip->duration_ms) {
            ++dm.interrupts;
          }
          break;
        }
        case SourceKind::kEavesdrop:
          dm.eavesdrop_ms += len;
          break;
        case SourceKind::kSilence:
          dm.silence_ms += len;
          break;
      }
    }
    m.devices.emplace(id, dm);
  }
  for (auto ia = log.devices.begin(); ia != log.devices.end(); ++ia) {
    for (auto ib = std::next(ia); ib != log.devices.end(); ++ib) {
      m.pairs.push_back(pair_metrics(ia->first, ia->second, ib->first, ib->second,
                                     log.duration_ms, gap_threshold_ms));
    }
  }
  return m;
}

std::string metrics_to_json(const Metrics& m) {
  nlohmann::ordered_json doc;
  doc["duration_ms"] = m.duration_ms;
  doc["gap_threshold_ms"] = m.gap_threshold_ms;
  doc["devices"] = nlohmann::ordered_json::array();
  for (const auto& [id, d] : m.devices) {
    doc["devices"].push_back({{"device", id},
                              {"personal_listen_ms", d.personal_listen_ms},
                              {"eavesdrop_ms", d.eavesdrop_ms},
                              {"silence_ms", d.silence_ms},
                              {"interrupts", d.interrupts}});
  }
  doc["pairs"] = nlohmann::ordered_json::array();
  for (const PairMetrics& p : m.pairs) {
    doc["pairs"].push_back({{"a", p.a},
                            {"b", p.b},
                            {"mutual_ms", p.mutual_ms},
                            {"mutual_fraction", p.mutual_fraction},
                            {"max_mutual_offset_skew_ms", p.max_mutual_offset_skew_ms},
                            {"episodes", p.episodes}});
  }
  return doc.dump(2);
}

}  // namespace pairguide
