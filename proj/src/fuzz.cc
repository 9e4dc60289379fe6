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

#include "pairguide/fuzz.h"

#include <algorithm>
#include <future>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "pairguide/oracle.h"
#include "pairguide/simulation.h"

namespace pairguide {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Bounded draw without distribution objects, so scenarios are identical
// across standard libraries.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::string describe(const Segment& s) {
  std::ostringstream os;
  os << "[" << s.t0 << ", " << s.t1 << ") " << to_string(source_kind(s.decision));
  return os.str();
}

}  // namespace

FuzzCase make_fuzz_case(std::uint64_t seed, std::size_t run_index, std::size_t n_events,
                        const std::vector<double>& loss_sweep) {
  FuzzCase c;
  c.run_seed = splitmix64(seed ^ splitmix64(run_index));
  c.n_events = n_events;
  c.network.seed = c.run_seed;
  c.network.loss_prob = loss_sweep.empty() ? 0.0 : loss_sweep[run_index % loss_sweep.size()];

  const bool identity =
      c.network.loss_prob == 0.0 &&
      (loss_sweep.empty() ? run_index : run_index / loss_sweep.size()) % 2 == 0;
  if (!identity) {
    std::mt19937_64 rng(splitmix64(c.run_seed));
    c.network.latency_min_ms = below(rng, 51);
    c.network.latency_max_ms = c.network.latency_min_ms + below(rng, 151);
    c.network.dup_prob = static_cast<double>(below(rng, 21)) / 100.0;
  }
  return c;
}

Scenario generate_scenario(const Catalog& catalog, const FuzzCase& fuzz_case) {
  std::mt19937_64 rng(fuzz_case.run_seed);
  Scenario s;
  s.network = fuzz_case.network;

  const auto& walls = catalog.walls();
  std::vector<std::string> target_ids;
  for (const Wall& w : walls) {
    for (const Target& t : w.targets) target_ids.push_back(t.target_id);
  }
  static constexpr VolumeLevel kLevels[] = {VolumeLevel::kOff, VolumeLevel::kQuiet,
                                            VolumeLevel::kLoud};

  const std::size_t n_devices = 2 + below(rng, 3);
  std::map<DeviceId, std::string> displayed;
  for (std::size_t i = 0; i < n_devices; ++i) {
    DeviceConfig d;
    d.device_id = static_cast<DeviceId>(i + 1);
    d.group_id = 1;
    // Mostly Quiet, matching the shipped default.
    d.initial_volume = below(rng, 4) == 0 ? kLevels[below(rng, 3)] : VolumeLevel::kQuiet;
    d.initial_wall = walls[below(rng, walls.size())].wall_id;
    displayed[d.device_id] = d.initial_wall;
    s.devices.push_back(d);
  }

  TimeMs t = 0;
  for (std::size_t i = 0; i < fuzz_case.n_events; ++i) {
    // One in five events shares its instant with the previous one.
    if (i > 0 && below(rng, 5) != 0) t += below(rng, 8000);
    TraceEvent e;
    e.t_ms = t;
    e.device_id = static_cast<DeviceId>(1 + below(rng, n_devices));
    const std::uint64_t kind = below(rng, 100);
    if (kind < 55) {
      const Wall& wall = *catalog.find_wall(displayed[e.device_id]);
      Point p;
      if (!wall.targets.empty() && below(rng, 3) != 0) {
        const Rect& r = wall.targets[below(rng, wall.targets.size())].rect;
        p = Point{r.x + static_cast<std::int64_t>(below(rng, r.width)),
                  r.y + static_cast<std::int64_t>(below(rng, r.height))};
      } else {
        p = Point{static_cast<std::int64_t>(below(rng, wall.width_px)),
                  static_cast<std::int64_t>(below(rng, wall.height_px))};
      }
      e.action = TapAction{wall.wall_id, p};
    } else if (kind < 70 && !target_ids.empty()) {
      e.action = SelectAction{target_ids[below(rng, target_ids.size())]};
    } else if (kind < 82) {
      e.action = SetVolumeAction{kLevels[below(rng, 3)]};
    } else if (kind < 92) {
      const std::string& wall = walls[below(rng, walls.size())].wall_id;
      displayed[e.device_id] = wall;
      e.action = SwitchWallAction{wall};
    } else {
      e.action = StopAction{};
    }
    s.events.push_back(std::move(e));
  }
  // Long enough tail for the last clip to finish and a few beacons to pass.
  s.duration_ms = t + 60000 + below(rng, 30000);
  return s;
}

std::vector<Violation> check_case(const Catalog& catalog, const FuzzCase& fuzz_case) {
  std::vector<Violation> out;
  auto report = [&](std::string invariant, std::string detail) {
    out.push_back(Violation{fuzz_case, std::move(invariant), std::move(detail)});
  };

  const Scenario scenario = generate_scenario(catalog, fuzz_case);
  const GainConfig gains;
  const SimulationResult sim = run_simulation(catalog, scenario);
  const OracleResult oracle = run_oracle(catalog, scenario, gains);

  if (auto err = check_partition(sim.log)) report("log-partition", "simulation " + *err);
  if (auto err = check_partition(oracle.log)) report("log-partition", "oracle " + *err);

  // Single source: each segment is exactly one decision, reverb only on
  // eavesdropped audio, at a gain the volume model can produce.
  for (const auto& [id, segs] : sim.log.devices) {
    for (const Segment& s : segs) {
      if (const auto* p = std::get_if<PersonalAudio>(&s.decision)) {
        if (p->gain != gains.personal) {
          report("no-mix", "device " + std::to_string(id) + " personal gain " +
                               std::to_string(p->gain) + " at " + describe(s));
        }
      } else if (const auto* e = std::get_if<EavesdropAudio>(&s.decision)) {
        if (e->source_device == id ||
            (e->gain != gains.quiet && e->gain != gains.eavesdrop(VolumeLevel::kLoud))) {
          report("no-mix", "device " + std::to_string(id) + " bad eavesdrop at " +
                               describe(s));
        }
      }
    }
  }

  // Personal playback is local state, so it must match ground truth exactly
  // under any network.
  for (const auto& [id, sim_segs] : sim.log.devices) {
    RenderLog a, b;
    a.duration_ms = b.duration_ms = sim.log.duration_ms;
    auto personal_only = [](const std::vector<Segment>& segs) {
      LogBuilder lb;
      lb.add_device(0);
      for (const Segment& s : segs) {
        if (std::holds_alternative<PersonalAudio>(s.decision)) {
          lb.observe(0, s.t0, s.decision);
        } else {
          lb.observe(0, s.t0, Silence{});
        }
      }
      return lb;
    };
    a = personal_only(sim_segs).finish(sim.log.duration_ms);
    b = personal_only(oracle.log.devices.at(id)).finish(oracle.log.duration_ms);
    for (const Mismatch& m : diff_logs(a, b)) {
      report("personal-priority", "device " + std::to_string(id) + " differs on [" +
                                      std::to_string(m.t0) + ", " + std::to_string(m.t1) +
                                      ")");
    }
  }

  std::map<std::pair<DeviceId, DeviceId>, Seq> last_applied;
  for (const Receipt& r : sim.receipts) {
    if (r.status != HandleStatus::kApplied) continue;
    auto key = std::pair{r.to, r.from};
    auto it = last_applied.find(key);
    if (it != last_applied.end() && r.seq <= it->second) {
      report("dedup-monotone", "device " + std::to_string(r.to) + " applied seq " +
                                   std::to_string(r.seq) + " from " +
                                   std::to_string(r.from) + " after " +
                                   std::to_string(it->second));
    }
    last_applied[key] = r.seq;
  }

  const auto& c = sim.counters;
  if (c.generated != c.delivered + c.dropped + c.pending()) {
    report("conservation", "generated " + std::to_string(c.generated) + " != delivered " +
                               std::to_string(c.delivered) + " + dropped " +
                               std::to_string(c.dropped));
  }
  if (!sim.diagnostics.empty()) report("diagnostics", sim.diagnostics.front());

  if (scenario.network.is_identity()) {
    if (to_jsonl(sim.log) != to_jsonl(oracle.log)) {
      const auto mismatches = diff_logs(sim.log, oracle.log);
      std::string where = mismatches.empty()
                              ? "serializations differ"
                              : "device " + std::to_string(mismatches.front().device) +
                                    " from " + std::to_string(mismatches.front().t0);
      report("oracle-equivalence", where);
    }
    if (sim.tap_tips != oracle.tap_tips) report("oracle-equivalence", "tap tips differ");
  }
  return out;
}

FuzzReport fuzz(const Catalog& catalog, std::uint64_t seed, std::size_t n_events,
                std::size_t runs, const std::vector<double>& loss_sweep) {
  struct Outcome {
    FuzzRunSummary summary;
    std::vector<Violation> violations;
  };
  auto one = [&](std::size_t r) {
    Outcome o;
    o.summary.fuzz_case = make_fuzz_case(seed, r, n_events, loss_sweep);
    o.violations = check_case(catalog, o.summary.fuzz_case);
    const Scenario s = generate_scenario(catalog, o.summary.fuzz_case);
    o.summary.devices = s.devices.size();
    o.summary.violations = o.violations.size();
    return o;
  };

  std::vector<Outcome> outcomes(runs);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(runs, std::thread::hardware_concurrency()));
  std::size_t next = 0;
  while (next < runs) {
    std::vector<std::future<Outcome>> batch;
    for (std::size_t w = 0; w < workers && next < runs; ++w, ++next) {
      batch.push_back(std::async(std::launch::async, one, next));
    }
    const std::size_t first = next - batch.size();
    for (std::size_t k = 0; k < batch.size(); ++k) outcomes[first + k] = batch[k].get();
  }

  FuzzReport report;
  for (Outcome& o : outcomes) {
    report.total_events += o.summary.fuzz_case.n_events;
    report.runs.push_back(o.summary);
    for (Violation& v : o.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

std::string fuzz_report_text(const FuzzReport& report) {
  std::ostringstream os;
  for (std::size_t i = 0; i < report.runs.size(); ++i) {
    const auto& r = report.runs[i];
    const auto& n = r.fuzz_case.network;
    os << "run " << i << " seed=" << r.fuzz_case.run_seed << " devices=" << r.devices
       << " events=" << r.fuzz_case.n_events << " loss=" << n.loss_prob
       << " dup=" << n.dup_prob << " latency=[" << n.latency_min_ms << ","
       << n.latency_max_ms << "]" << (n.is_identity() ? " identity" : "")
       << " violations=" << r.violations << "\n";
  }
  for (const Violation& v : report.violations) {
    os << "VIOLATION " << v.invariant << " (run seed " << v.repro.run_seed << "): "
       << v.detail << "\n";
  }
  os << (report.ok() ? "OK" : "FAILED") << ": " << report.runs.size() << " runs, "
     << report.total_events << " events, " << report.violations.size() << " violations\n";
  return os.str();
}

}  // namespace pairguide
