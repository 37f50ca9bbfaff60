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
#include <vector>

#include "sketchadam/sketch.hpp"

namespace sketchadam {

/// Sparse vector: strictly increasing indices into [0, dim) with values.
struct SparseUpdate {
  std::size_t dim = 0;
  std::vector<std::size_t> indices;
  std::vector<double> values;

  /// Throws ArgumentError if indices are unsorted, duplicated, out of range,
  /// or values are non-finite or mismatched in length.
  void validate() const;

  std::vector<double> densify() const;

  /// Adds `factor * values` into `target` (length dim).
  void axpy_into(double factor, std::span<double> target) const;

  friend bool operator==(const SparseUpdate&, const SparseUpdate&) = default;
};

/// How the v_hat-scaled candidate selection reads the merged sketch.
enum class UnsketchMode {
  // Point-query the raw sketch, then divide each estimate by sqrt(v_hat_i).
  kEstimateThenScale,
  // Divide every bucket a coordinate hashes to by sqrt(v_hat_i), once per
  // coordinate, then point-query. Shared buckets are divided repeatedly.
  kBucketRescale,
};

/// Parameters of the two-round sketched top-k protocol.
struct ProtocolConfig {
  std::size_t k = 500;
  std::size_t p_factor = 4;
  SketchConfig sketch{};
  UnsketchMode unsketch_mode = UnsketchMode::kEstimateThenScale;

  std::size_t candidate_count() const noexcept { return k * p_factor; }

  /// Throws ArgumentError unless 1 <= k, 1 <= P and P*k <= sketch.dim.
  void validate() const;

  friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

struct AggregationResult {
  SparseUpdate global_update;                  // exact mean over workers at chosen_indices
  std::vector<SparseUpdate> per_worker_updates;  // each worker's exact values at chosen_indices
  std::vector<std::size_t> chosen_indices;     // ascending
  std::vector<std::size_t> candidate_indices;  // round-one order (decreasing estimate)
  std::int64_t upstream_scalars = 0;           // per worker
  std::int64_t downstream_scalars = 0;         // broadcast
};

/// The k largest-magnitude coordinates with their exact values. Ties go to
/// the lower index.
SparseUpdate top_k(std::span<const double> vector, std::size_t k);

/// Scaled sign compressor: every coordinate becomes +-||x||_1 / d, with
/// sign(0) taken as +1.
std::vector<double> sign_compress(std::span<const double> vector);

/// Two-round sketched top-k aggregation.
///
/// Round one: every worker sketches its vector; the server sums the sketches
/// in worker order, scales by 1/n and takes the P*k heaviest coordinates of
/// the merged sketch as candidates. Round two: workers send their exact
/// values at the candidates; the server averages them and keeps the top k
/// of the exact means.
AggregationResult sketched_topk_aggregate(std::span<const std::vector<double>> worker_vectors,
                                          const ProtocolConfig& cfg);

/// Same protocol with every ranking done in the space value_i / sqrt(v_hat_i).
/// The returned updates carry unscaled values; callers apply the scaling.
AggregationResult sketched_topk_aggregate_scaled(
    std::span<const std::vector<double>> worker_vectors, std::span<const double> v_hat,
    const ProtocolConfig& cfg);

/// 2d / (upstream + downstream). Zero traffic yields +infinity.
double compression_rate(std::size_t dim, std::int64_t upstream, std::int64_t downstream);

/// Mean of `vectors` summed in index order, then divided by the count.
std::vector<double> mean_of(std::span<const std::vector<double>> vectors);

}  // namespace sketchadam
