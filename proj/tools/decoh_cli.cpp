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

// Batch experiment runner. Thin wrapper over the shared library's C API:
//   decoh run <config.json> [--output-dir DIR] [--seed-override S]
//             [--mode exact|mc] [--trials N] [--quiet]
// Exit status: 0 checks passed (or inapplicable), 1 a check failed,
// 2 configuration/parse/IO error.

#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "decoh/decoh.h"

int main(int argc, char** argv) {
  CLI::App app{"ensemble runner for random pure-state transformations"};
  app.set_version_flag("--version", decoh_version());
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run an experiment config and write its report");
  std::string config_path;
  run->add_option("config", config_path, "path to the experiment config JSON")->required();
  std::string output_dir;
  CLI::Option* opt_outdir =
      run->add_option("--output-dir", output_dir, "directory for report and trajectory files");
  std::uint64_t seed_override = 0;
  CLI::Option* opt_seed = run->add_option("--seed-override", seed_override,
                                          "replace the configured seeds with {s, s+1, s+2}");
  std::string mode_override;
  CLI::Option* opt_mode = run->add_option("--mode", mode_override, "force exact or mc mode")
                              ->check(CLI::IsMember({"exact", "mc"}));
  std::uint64_t trials_override = 0;
  CLI::Option* opt_trials =
      run->add_option("--trials", trials_override, "override the Monte Carlo trial count");
  bool quiet = false;
  run->add_flag("--quiet", quiet, "suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit cleanly, bad usage is a config error
  }

  decoh_run_options options{};
  options.output_dir = opt_outdir->count() > 0 ? output_dir.c_str() : nullptr;
  options.has_seed_override = opt_seed->count() > 0 ? 1 : 0;
  options.seed_override = seed_override;
  options.mode_override = opt_mode->count() > 0 ? mode_override.c_str() : nullptr;
  options.has_trials_override = opt_trials->count() > 0 ? 1 : 0;
  options.trials_override = trials_override;
  options.quiet = quiet ? 1 : 0;

  return decoh_run_experiment_file(config_path.c_str(), &options);
}
