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

#include <cstdint>
#include <string>
#include <vector>

#include "pairguide/catalog.h"
#include "pairguide/netsim.h"
#include "pairguide/scenario.h"

namespace pairguide {

// Network settings swept across fuzz runs; run r uses loss_sweep[r % size].
inline const std::vector<double> kDefaultLossSweep = {0.0, 0.1, 0.3, 0.5};

// Everything needed to replay one fuzz run bit-for-bit.
struct FuzzCase {
  std::uint64_t run_seed = 0;
  std::size_t n_events = 0;
  netsim::NetworkModel network;
};

struct Violation {
  FuzzCase repro;
  std::string invariant;
  std::string detail;
};

struct FuzzRunSummary {
  FuzzCase fuzz_case;
  std::size_t devices = 0;
  std::size_t violations = 0;
};

struct FuzzReport {
  std::vector<FuzzRunSummary> runs;
  std::vector<Violation> violations;
  std::size_t total_events = 0;
  bool ok() const { return violations.empty(); }
};

// The case for run `run_index` of a campaign seeded with `seed`. Runs whose
// loss is 0 alternate between the identity network and a jittery lossless
// one; the rest draw latency and duplication at random.
FuzzCase make_fuzz_case(std::uint64_t seed, std::size_t run_index, std::size_t n_events,
                        const std::vector<double>& loss_sweep = kDefaultLossSweep);

// Random valid scenario with 2 to 4 paired devices (one group) and exactly
// `fuzz_case.n_events` trace events.
Scenario generate_scenario(const Catalog& catalog, const FuzzCase& fuzz_case);

// Runs simulation and oracle on the generated scenario and checks log
// partition, single-source rendering, personal priority, per-sender seq
// monotonicity, packet conservation and, on identity networks, exact
// oracle equivalence.
std::vector<Violation> check_case(const Catalog& catalog, const FuzzCase& fuzz_case);

// Independent runs execute concurrently; the report is ordered by run.
FuzzReport fuzz(const Catalog& catalog, std::uint64_t seed, std::size_t n_events,
                std::size_t runs,
                const std::vector<double>& loss_sweep = kDefaultLossSweep);

std::string fuzz_report_text(const FuzzReport& report);

}  // namespace pairguide
