// Copyright 2026 The sketchadam Authors. All Rights Reserved.
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
// =============================================================================

// sketchadam: run, verify and compare sketched AMSGrad experiments.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sketchadam/commands.hpp"

int main(int argc, char** argv) {
  using namespace sketchadam;

  CLI::App app{"Sketched AMSGrad experiments over a simulated parameter server"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool no_invariants = false;
  std::size_t jobs = 1;

  CLI::App* run_cmd = app.add_subcommand("run", "Run one experiment (or its sweep grid)");
  run_cmd->add_option("config", config_path, "JSON experiment config")->required();
  run_cmd->add_option("-o,--output", out_dir, "Output directory")->required();
  run_cmd->add_option("--seed", seed, "Override the config seed");
  run_cmd->add_flag("--no-invariants", no_invariants, "Skip shadow-sequence checks");
  run_cmd->add_option("--jobs", jobs, "Parallel sweep runs")->check(CLI::PositiveNumber);

  std::string suite;
  std::uint64_t verify_seed = 0;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run property suites");
  verify_cmd->add_option("suite", suite, "sketch, compressor, optimizer or all")
      ->required()
      ->check(CLI::IsMember({"sketch", "compressor", "optimizer", "all"}));
  verify_cmd->add_option("--seed", verify_seed, "Monte Carlo seed");

  std::vector<std::string> variants;
  CLI::App* compare_cmd = app.add_subcommand("compare", "Run several variants on one config");
  compare_cmd->add_option("config", config_path, "JSON experiment config")->required();
  compare_cmd->add_option("--variants", variants, "Comma-separated variant names")
      ->required()
      ->delimiter(',');
  compare_cmd->add_option("-o,--output", out_dir, "Output directory")->required();
  compare_cmd->add_option("--seed", seed, "Override the config seed");
  compare_cmd->add_flag("--no-invariants", no_invariants, "Skip shadow-sequence checks");
  compare_cmd->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunOptions options;
  options.seed = seed;
  options.check_invariants = !no_invariants;
  options.jobs = jobs;

  if (*run_cmd) return cmd_run(config_path, out_dir, options, std::cout, std::cerr);
  if (*verify_cmd) return cmd_verify(suite, verify_seed, std::cout, std::cerr);
  return cmd_compare(config_path, variants, out_dir, options, std::cout, std::cerr);
}
