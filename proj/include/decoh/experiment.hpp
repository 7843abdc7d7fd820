// Copyright 2026 The decoh authors
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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "decoh/quantum_state.hpp"
#include "decoh/unravelling.hpp"
#include "decoh/verifier.hpp"

namespace decoh {

struct ModeConfig {
  bool exact = true;
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> seeds;
};

struct SweepConfig {
  enum class Kind { none, kappa, partition_chain };
  Kind kind = Kind::none;
  std::vector<double> kappa_values;
  std::vector<std::vector<std::vector<std::size_t>>> partitions;
};

struct ExperimentConfig {
  PureState initial;
  Observable observable;
  UnravellingModel model;
  ModeConfig mode;
  std::vector<std::string> checks;
  std::string report_path = "report.json";
  std::string trajectories_path = "trajectories.csv";
  SweepConfig sweep;
};

// Known check names, in default execution order.
const std::vector<std::string>& known_checks();

ExperimentConfig parse_config(const nlohmann::ordered_json& j);

// Round-trips the resolved configuration; echoed verbatim into reports.
nlohmann::ordered_json serialize_config(const ExperimentConfig& cfg);

struct RunOverrides {
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;    // replaces the seed list with {s, s+1, s+2}
  std::optional<std::string> mode;      // "exact" or "mc"
  std::optional<std::uint64_t> trials;
  bool quiet = false;
};

void apply_overrides(ExperimentConfig& cfg, const RunOverrides& overrides);

struct ExperimentResult {
  nlohmann::ordered_json report;
  std::optional<std::string> trajectories_csv;
  int exit_status = 0;  // 0: all checks pass or inapplicable, 1: some check failed
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// File pipeline: load config, apply overrides, run, write report (and the
// trajectory table when a sweep is configured) into output_dir or next to
// the working directory. Progress goes to log unless quiet; errors always
// go to log. Returns the run's exit status, or 2 for configuration,
// dimension, parse, or IO problems.
int run_experiment_file(const std::string& config_path, const RunOverrides& overrides,
                        std::ostream* log);

}  // namespace decoh
