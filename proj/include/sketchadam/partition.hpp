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
#include <span>
#include <string_view>
#include <vector>

namespace sketchadam {

enum class PartitionMode { kIid, kLabelSkew };

std::string_view to_string(PartitionMode mode);
PartitionMode partition_mode_from_string(std::string_view name);

/// Assignment of sample ids to worker shards.
struct Partition {
  PartitionMode mode = PartitionMode::kIid;
  double skew_param = 1.0;
  std::vector<std::vector<std::size_t>> shards;

  std::size_t n_shards() const noexcept { return shards.size(); }

  /// shard_of[s] for every sample s in [0, n_samples).
  std::vector<std::size_t> shard_of(std::size_t n_samples) const;
};

/// Splits samples [0, n_samples) across n workers.
///
/// kIid: seeded shuffle, then round-robin.
///
/// kLabelSkew: for every class, worker proportions are drawn from a
/// symmetric Dirichlet(skew_param) and the largest one is swapped into the
/// slot of the class's home worker (c * n / n_classes). The class's shuffled
/// samples are then split by largest-remainder rounding. Smaller skew_param
/// concentrates each class on its home worker; skew_param = 0 sends every
/// class entirely home. Empty shards are refilled by moving one sample from
/// the lowest indexed worker holding more than one.
///
/// `labels` may be empty for unlabeled data only in kIid mode.
Partition partition_data(std::span<const int> labels, std::size_t n_samples, std::size_t n,
                         PartitionMode mode, double skew_param, std::uint64_t seed);

}  // namespace sketchadam
