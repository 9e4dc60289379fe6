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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pairguide/fuzz.h"
#include "pairguide/oracle.h"
#include "pairguide/protocol.h"
#include "pairguide/simulation.h"
#include "sim_fixtures.h"

namespace pairguide {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

RenderDecision decision_of(const std::vector<Segment>& segs, TimeMs t) {
  for (const Segment& seg : segs) {
    if (seg.t0 <= t && t < seg.t1) return decision_at(seg, t);
  }
  return Silence{};
}

Catalog tour_catalog() { return load_catalog_file(testing::fixture("catalog_tour.json")); }

Outcome oracle_equivalence() {
  const Catalog c = tour_catalog();
  const auto t0 = Clock::now();
  int identical = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Scenario s = generate_scenario(c, {seed, 200, netsim::NetworkModel::identity()});
    const auto sim = run_simulation(c, s);
    const auto oracle = run_oracle(c, s);
    if (to_jsonl(sim.log) == to_jsonl(oracle.log)) ++identical;
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << identical << "/100 byte-identical, " << secs << " s (limit 5 s)";
  return {identical == 100 && secs < 5.0, os.str()};
}

Outcome mid_clip_join() {
  const Catalog c = testing::three_clip_catalog();
  // B starts clip 8 (20 s) at sB=1000; A's clip 10 (12 s) runs 3000..15000.
  const TimeMs sb = 1000;
  const TimeMs t1 = 15000;
  const auto r = run_simulation(
      c, testing::pair_scenario(40000, {{sb, 2, SelectAction{"t8"}}, {3000, 1, SelectAction{"t10"}}}));
  for (const Segment& seg : r.log.devices.at(1)) {
    if (seg.t0 != t1) continue;
    const auto* e = std::get_if<EavesdropAudio>(&seg.decision);
    if (e == nullptr) return {false, "segment at t1 is not eavesdrop"};
    std::ostringstream os;
    os << "offset " << e->offset_ms << ", expected " << (t1 - sb);
    return {e->clip_id == 8 && e->offset_ms == t1 - sb, os.str()};
  }
  return {false, "no segment begins at t1"};
}

Outcome priority_and_no_mix() {
  const Catalog c = tour_catalog();
  std::size_t bad = 0;
  std::size_t other = 0;
  std::size_t events = 0;
  for (std::size_t i = 0; i < kDefaultLossSweep.size(); ++i) {
    // Offsetting the run index by the sweep position keeps loss index i
    // and draws a jittery network for the lossless run.
    const FuzzCase fc = make_fuzz_case(2026, 4 + i, 10000);
    events += fc.n_events;
    for (const Violation& v : check_case(c, fc)) {
      if (v.invariant == "no-mix" || v.invariant == "personal-priority") {
        ++bad;
      } else {
        ++other;
      }
    }
  }
  std::ostringstream os;
  os << events << " events over loss {0,0.1,0.3,0.5}: " << bad
     << " no-mix/priority violations, " << other << " other";
  return {bad == 0 && other == 0, os.str()};
}

Outcome loss_recovery() {
  const Catalog c = tour_catalog();
  Scenario s = load_scenario_file(testing::fixture("scenario_tour25.json"));
  s.network.latency_min_ms = 20;
  s.network.latency_max_ms = 120;
  s.network.loss_prob = 0.3;
  s.network.dup_prob = 0.0;
  s.network.beacon_period_ms = 1000;
  const auto sim = run_simulation(c, s);
  const auto oracle = run_oracle(c, s);
  const auto changes = testing::state_changes(s, oracle.log);
  const auto mismatches = diff_logs(sim.log, oracle.log);
  std::size_t too_long = 0;
  std::size_t unanchored = 0;
  DurationMs worst = 0;
  std::ostringstream worst_at;
  for (const Mismatch& m : mismatches) {
    if (m.length() > 1120) ++too_long;
    if (!changes.contains(m.t0)) ++unanchored;
    if (m.length() > worst) {
      worst = m.length();
      worst_at.str("");
      worst_at << "device " << m.device << " [" << m.t0 << ", " << m.t1 << ")";
    }
  }
  std::ostringstream os;
  os << mismatches.size() << " divergences, " << too_long << " over 1120 ms, " << unanchored
     << " not at a state change, worst " << worst << " ms";
  if (worst > 0) os << " at " << worst_at.str();
  return {too_long == 0 && unanchored == 0, os.str()};
}

Outcome volume_semantics() {
  const Catalog c = testing::three_clip_catalog();
  const Scenario with = testing::pair_scenario(
      30000, {{1000, 2, SelectAction{"t8"}},
              {6000, 1, SetVolumeAction{VolumeLevel::kLoud}},
              {11000, 1, SetVolumeAction{VolumeLevel::kOff}},
              {16000, 1, SetVolumeAction{VolumeLevel::kQuiet}}});
  Scenario without = with;
  std::erase_if(without.events, [](const TraceEvent& e) {
    return std::holds_alternative<SetVolumeAction>(e.action);
  });
  const auto r = run_simulation(c, with);
  const auto& a = r.log.devices.at(1);
  const auto& b = r.log.devices.at(2);
  auto gain_at = [&](const std::vector<Segment>& segs, TimeMs t) {
    const RenderDecision d = decision_of(segs, t);
    if (const auto* e = std::get_if<EavesdropAudio>(&d)) return e->gain;
    if (const auto* p = std::get_if<PersonalAudio>(&d)) return p->gain;
    return -1.0;
  };
  const double quiet = gain_at(a, 3000);
  const double loud = gain_at(a, 8000);
  const bool off = std::holds_alternative<Silence>(decision_of(a, 13000));
  const double personal = gain_at(b, 8000);
  const bool quiet_again = gain_at(a, 18000) == 0.5;
  const bool trace_same = message_trace_jsonl(r.messages) ==
                          message_trace_jsonl(run_simulation(c, without).messages);
  std::ostringstream os;
  os << "quiet " << quiet << ", loud " << loud << " (personal " << personal << "), off "
     << (off ? "silent" : "audible") << ", trace " << (trace_same ? "identical" : "differs");
  return {quiet == 0.5 && loud == 1.0 && loud == personal && off && quiet_again && trace_same,
          os.str()};
}

protocol::Message golden_message(const nlohmann::json& j) {
  protocol::Message m;
  m.sender_id = j.at("sender").get<DeviceId>();
  m.seq = j.at("seq").get<Seq>();
  m.send_ts_ms = j.at("send_ts").get<TimeMs>();
  const auto type = j.at("type").get<std::string>();
  if (type == "HELLO") {
    m.payload = protocol::Hello{j.at("group").get<GroupId>()};
  } else if (type == "START") {
    m.payload = protocol::Start{j.at("clip").get<ClipId>(), j.at("ts").get<TimeMs>()};
  } else if (type == "STOP") {
    m.payload = protocol::Stop{j.at("clip").get<ClipId>(), j.at("ts").get<TimeMs>()};
  } else {
    m.payload = protocol::Beacon{j.at("playing").get<int>() == 1, j.at("clip").get<ClipId>(),
                                 j.at("start_ts").get<TimeMs>()};
  }
  return m;
}

Outcome wire_conformance() {
  std::ifstream in(testing::fixture("golden/messages.json"));
  const auto cases = nlohmann::json::parse(in);
  std::size_t matched = 0;
  std::set<protocol::MsgType> types;
  for (const auto& g : cases) {
    const protocol::Message m = golden_message(g.at("message"));
    const auto bytes = protocol::encode(m);
    const auto decoded = protocol::decode(*protocol::from_hex(g.at("hex").get<std::string>()));
    if (protocol::to_hex(bytes) == g.at("hex") && decoded.ok() && decoded.message() == m) {
      ++matched;
      types.insert(m.type());
    }
  }

  std::mt19937_64 rng(6);
  std::size_t crashes = 0;
  std::size_t accepted = 0;
  const std::vector<std::uint8_t> seed_frame =
      *protocol::from_hex(cases.at(1).at("hex").get<std::string>());
  for (std::size_t i = 0; i < 1000000; ++i) {
    std::vector<std::uint8_t> buf;
    if (i % 2 == 0) {
      buf.resize(rng() % 48);
      for (auto& b : buf) b = static_cast<std::uint8_t>(rng());
      if (buf.size() >= 3 && i % 4 == 0) {
        buf[0] = 0x53;
        buf[1] = 0x56;
        buf[2] = 0x01;
      }
    } else {
      buf = seed_frame;
      const int flips = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < flips; ++k) buf[rng() % buf.size()] ^= static_cast<std::uint8_t>(rng());
      if (rng() % 4 == 0) buf.resize(rng() % (buf.size() + 8));
    }
    try {
      const auto r = protocol::decode(buf);
      if (r.ok()) {
        ++accepted;
        if (protocol::encode(r.message()) != buf) ++crashes;
      }
    } catch (...) {
      ++crashes;
    }
  }
  std::ostringstream os;
  os << matched << "/" << cases.size() << " golden fixtures (" << types.size()
     << " message types), 1000000 fuzzed datagrams: " << crashes << " failures, " << accepted
     << " decoded";
  return {matched == cases.size() && types.size() == 4 && crashes == 0, os.str()};
}

Outcome tour_scale_run() {
  const Catalog c = tour_catalog();
  const Scenario s = load_scenario_file(testing::fixture("scenario_tour25.json"));
  const auto t0 = Clock::now();
  const auto r = run_simulation(c, s);
  const double secs = seconds_since(t0);
  std::size_t selections = 0;
  for (const SentMessage& m : r.messages) {
    if (m.message.type() == protocol::MsgType::kStart) ++selections;
  }
  std::ostringstream os;
  os << s.duration_ms / 60000 << " min, " << s.devices.size() << " devices, " << selections
     << " selections, " << secs << " s (limit 1 s)";
  return {s.duration_ms == 1500000 && s.devices.size() == 2 && selections >= 35 &&
              selections <= 45 && secs < 1.0,
          os.str()};
}

Outcome tap_tips() {
  const Catalog c = tour_catalog();
  const Wall& wall = *c.find_wall("library_w1");
  const Target& hit = wall.targets.at(2);
  const Point inside{hit.rect.x + hit.rect.width / 2, hit.rect.y + hit.rect.height / 2};
  Point outside{0, 0};
  for (std::int64_t x = 0; x < wall.width_px; ++x) {
    const Point p{x, 0};
    if (std::none_of(wall.targets.begin(), wall.targets.end(),
                     [&](const Target& t) { return t.rect.contains(p.x, p.y); })) {
      outside = p;
      break;
    }
  }
  Scenario s;
  s.duration_ms = 60000;
  s.devices = {{1, 1, VolumeLevel::kQuiet, wall.wall_id}};
  s.events = {{1000, 1, TapAction{wall.wall_id, outside}},
              {2000, 1, TapAction{wall.wall_id, inside}}};
  const auto r = run_simulation(c, s);
  std::vector<std::string> all;
  for (const Target& t : wall.targets) all.push_back(t.target_id);
  const bool tip_ok = r.tap_tips.size() == 1 && r.tap_tips[0].t_ms == 1000 &&
                      r.tap_tips[0].outline_target_ids == all;
  const RenderDecision d = decision_of(r.log.devices.at(1), 2000);
  const auto* p = std::get_if<PersonalAudio>(&d);
  const bool hit_ok = p != nullptr && p->clip_id == hit.clip_id && p->offset_ms == 0;
  std::ostringstream os;
  os << "miss: " << r.tap_tips.size() << " tip(s) outlining "
     << (r.tap_tips.empty() ? 0 : r.tap_tips[0].outline_target_ids.size()) << "/" << all.size()
     << " targets; hit: " << (hit_ok ? "clip " + std::to_string(hit.clip_id) + " plays" : "no clip");
  return {tip_ok && hit_ok, os.str()};
}

}  // namespace
}  // namespace pairguide

int main() {
  using pairguide::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 oracle equivalence", pairguide::oracle_equivalence},
      {"2 mid-clip join", pairguide::mid_clip_join},
      {"3 priority and no-mix", pairguide::priority_and_no_mix},
      {"4 loss recovery bound", pairguide::loss_recovery},
      {"5 volume semantics", pairguide::volume_semantics},
      {"6 wire conformance", pairguide::wire_conformance},
      {"7 tour-scale run", pairguide::tour_scale_run},
      {"8 tap tips", pairguide::tap_tips},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
