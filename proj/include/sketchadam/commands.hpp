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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "sketchadam/simulation.hpp"

namespace sketchadam {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitInvariant = 4;

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config's seed
  bool check_invariants = true;       // false forces invariant tracking off
  std::size_t jobs = 1;               // parallel runs for sweeps and compare
};

/// Summary block written to summary.json.
std::string summary_json(const RunConfig& config, const RunResult& result);

/// Writes `contents` to `path` through a temporary file in the same
/// directory and a rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// `run <config> -o <dir>`: trace.csv, summary.json and config.resolved.json
/// in `out_dir`, or one subdirectory per grid point plus sweep_summary.csv
/// when the config has a sweep block.
int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
            const RunOptions& options, std::ostream& out, std::ostream& err);

/// `verify <suite>`: one line per property; exit 4 if any fails.
int cmd_verify(std::string_view suite, std::uint64_t seed, std::ostream& out, std::ostream& err);

/// `compare <config> --variants a,b`: one subdirectory per variant with the
/// same files as `run`, plus joined.csv keyed by iteration.
int cmd_compare(const std::filesystem::path& config_path, std::span<const std::string> variants,
                const std::filesystem::path& out_dir, const RunOptions& options,
                std::ostream& out, std::ostream& err);

}  // namespace sketchadam
