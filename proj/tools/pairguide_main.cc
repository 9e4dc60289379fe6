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

// Command-line front end for the guidebook simulator.
//
//   pairguide run --catalog F --scenario F [--oracle] [--out F] [--metrics F]
//                 [--trace F] [--tips F]
//   pairguide diff A B
//   pairguide validate --catalog F [--scenario F]
//   pairguide fuzz --catalog F --seed N --events N --runs N
//
// Exit status: 0 success or equivalence, 1 mismatch or violation, 2 usage or
// validation error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pairguide/catalog.h"
#include "pairguide/fuzz.h"
#include "pairguide/metrics.h"
#include "pairguide/oracle.h"
#include "pairguide/render_log.h"
#include "pairguide/scenario.h"
#include "pairguide/simulation.h"

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInvalid = 2;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

pairguide::Catalog load_catalog_reporting(const std::string& path) {
  pairguide::Catalog catalog = pairguide::load_catalog_file(path);
  for (const std::string& w : catalog.warnings()) {
    std::cerr << "warning: " << w << "\n";
  }
  return catalog;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paired guidebook protocol simulator"};
  app.require_subcommand(1);

  std::string catalog_path, scenario_path, out_path, metrics_path, trace_path, tips_path;
  bool use_oracle = false;
  auto* run = app.add_subcommand("run", "Simulate a scenario and emit its render log");
  run->add_option("--catalog", catalog_path, "Catalog JSON")->required();
  run->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  run->add_flag("--oracle", use_oracle, "Compute the ground-truth log instead");
  run->add_option("--out", out_path, "Render log JSONL (default stdout)");
  run->add_option("--metrics", metrics_path, "Metrics JSON");
  run->add_option("--trace", trace_path, "Sent-message trace JSONL");
  run->add_option("--tips", tips_path, "Tap-tip events JSONL");

  std::string log_a, log_b;
  auto* diff = app.add_subcommand("diff", "Compare two render logs");
  diff->add_option("a", log_a, "First render log")->required();
  diff->add_option("b", log_b, "Second render log")->required();

  auto* validate = app.add_subcommand("validate", "Check a catalog and scenario");
  validate->add_option("--catalog", catalog_path, "Catalog JSON")->required();
  validate->add_option("--scenario", scenario_path, "Scenario JSON");

  std::uint64_t seed = 0;
  std::size_t events = 1000, runs = 4;
  auto* fuzz = app.add_subcommand("fuzz", "Randomized invariant and oracle checks");
  fuzz->add_option("--catalog", catalog_path, "Catalog JSON")->required();
  fuzz->add_option("--seed", seed, "Campaign seed")->required();
  fuzz->add_option("--events", events, "Trace events per run")->required();
  fuzz->add_option("--runs", runs, "Number of runs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*run) {
      const auto catalog = load_catalog_reporting(catalog_path);
      const auto scenario = pairguide::load_scenario_file(scenario_path);
      pairguide::RenderLog log;
      if (use_oracle) {
        auto result = pairguide::run_oracle(catalog, scenario);
        log = std::move(result.log);
        if (!tips_path.empty()) write_output(tips_path, pairguide::tap_tips_jsonl(result.tap_tips));
      } else {
        auto result = pairguide::run_simulation(catalog, scenario);
        log = std::move(result.log);
        if (!trace_path.empty()) {
          write_output(trace_path, pairguide::message_trace_jsonl(result.messages));
        }
        if (!tips_path.empty()) write_output(tips_path, pairguide::tap_tips_jsonl(result.tap_tips));
        for (const std::string& d : result.diagnostics) std::cerr << "note: " << d << "\n";
      }
      write_output(out_path, pairguide::to_jsonl(log));
      if (!metrics_path.empty()) {
        write_output(metrics_path,
                     pairguide::metrics_to_json(pairguide::compute_metrics(log, catalog)) + "\n");
      }
      return kOk;
    }

    if (*diff) {
      const auto a = pairguide::parse_jsonl(read_file(log_a));
      const auto b = pairguide::parse_jsonl(read_file(log_b));
      const auto mismatches = pairguide::diff_logs(a, b);
      for (const auto& m : mismatches) {
        std::cout << "device " << m.device << " [" << m.t0 << ", " << m.t1 << ") "
                  << m.length() << " ms\n";
      }
      if (mismatches.empty()) {
        std::cout << "equivalent\n";
        return kOk;
      }
      return kMismatch;
    }

    if (*validate) {
      const auto catalog = load_catalog_reporting(catalog_path);
      std::cout << "catalog ok: " << catalog.rooms().size() << " rooms, "
                << catalog.walls().size() << " walls, " << catalog.clips().size()
                << " clips\n";
      if (!scenario_path.empty()) {
        const auto scenario = pairguide::load_scenario_file(scenario_path);
        pairguide::validate_scenario(catalog, scenario);
        std::cout << "scenario ok: " << scenario.devices.size() << " devices, "
                  << scenario.events.size() << " events\n";
      }
      return kOk;
    }

    if (*fuzz) {
      const auto catalog = load_catalog_reporting(catalog_path);
      const auto report = pairguide::fuzz(catalog, seed, events, runs);
      std::cout << pairguide::fuzz_report_text(report);
      return report.ok() ? kOk : kMismatch;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
