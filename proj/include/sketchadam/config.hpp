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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sketchadam/simulation.hpp"

namespace sketchadam {

/// Optional grid over worker counts, k values and learning rates. Empty
/// lists leave the base value alone. With a threshold, each grid point also
/// reports iterations to threshold.
struct SweepSpec {
  std::vector<std::size_t> worker_counts;
  std::vector<std::size_t> k_values;
  std::vector<double> learning_rates;
  std::optional<double> threshold;
  std::size_t window = 1;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct ExperimentConfig {
  RunConfig run{};
  std::optional<SweepSpec> sweep;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Named sketch/protocol shapes.
///   "mnist": r = 5, c = 400, k = 500, P = 4 (the default)
///   "cifar": r = 10, c = 100000, k = 50000, P = 8
ProtocolConfig protocol_preset(std::string_view name);

/// Parses a JSON experiment config. Unknown or duplicate keys and values of
/// the wrong type raise ConfigError naming the key; missing keys take the
/// defaults of RunConfig. The protocol's sketch dim is set from the problem.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Fully resolved JSON (every key explicit, presets expanded). Parsing the
/// result yields an equal config.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace sketchadam
