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

#include "sketchadam/compressors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sketchadam/detail/ranking.hpp"
#include "sketchadam/errors.hpp"

namespace sketchadam {

void SparseUpdate::validate() const {
  if (indices.size() != values.size()) {
    throw ArgumentError("SparseUpdate: indices and values differ in length");
  }
  if (indices.size() > dim) throw ArgumentError("SparseUpdate: more indices than dim");
  for (std::size_t p = 0; p < indices.size(); ++p) {
    if (indices[p] >= dim) {
      throw ArgumentError("SparseUpdate: index " + std::to_string(indices[p]) + " out of range");
    }
    if (p > 0 && indices[p] <= indices[p - 1]) {
      throw ArgumentError("SparseUpdate: indices must be strictly increasing");
    }
    if (!std::isfinite(values[p])) throw ArgumentError("SparseUpdate: non-finite value");
  }
}

std::vector<double> SparseUpdate::densify() const {
  std::vector<double> out(dim, 0.0);
  for (std::size_t p = 0; p < indices.size(); ++p) out[indices[p]] = values[p];
  return out;
}

void SparseUpdate::axpy_into(double factor, std::span<double> target) const {
  if (target.size() != dim) throw ArgumentError("SparseUpdate::axpy_into: length mismatch");
  for (std::size_t p = 0; p < indices.size(); ++p) target[indices[p]] += factor * values[p];
}

void ProtocolConfig::validate() const {
  sketch.validate();
  if (k < 1 || p_factor < 1) throw ArgumentError("protocol requires k >= 1 and P >= 1");
  if (k > sketch.dim || k * p_factor > sketch.dim) {
    throw ArgumentError("protocol requires P*k <= dim (k=" + std::to_string(k) +
                        ", P=" + std::to_string(p_factor) + ", dim=" + std::to_string(sketch.dim) +
                        ")");
  }
}

SparseUpdate top_k(std::span<const double> vector, std::size_t k) {
  if (k < 1 || k > vector.size()) {
    throw ArgumentError("top_k: k=" + std::to_string(k) + " outside [1, " +
                        std::to_string(vector.size()) + "]");
  }
  SparseUpdate out;
  out.dim = vector.size();
  out.indices = detail::rank_by_magnitude(vector, k);
  std::sort(out.indices.begin(), out.indices.end());
  out.values.reserve(k);
  for (std::size_t i : out.indices) out.values.push_back(vector[i]);
  return out;
}

std::vector<double> sign_compress(std::span<const double> vector) {
  if (vector.empty()) throw ArgumentError("sign_compress: empty vector");
  double l1 = 0.0;
  for (double x : vector) l1 += std::fabs(x);
  const double magnitude = l1 / static_cast<double>(vector.size());
  std::vector<double> out(vector.size());
  for (std::size_t i = 0; i < vector.size(); ++i) {
    out[i] = std::signbit(vector[i]) && vector[i] != 0.0 ? -magnitude : magnitude;
  }
  return out;
}

std::vector<double> mean_of(std::span<const std::vector<double>> vectors) {
  if (vectors.empty()) throw ArgumentError("mean_of: no vectors");
  std::vector<double> sum(vectors.front().size(), 0.0);
  for (const auto& v : vectors) {
    if (v.size() != sum.size()) throw ArgumentError("mean_of: length mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
  }
  const double n = static_cast<double>(vectors.size());
  for (double& s : sum) s /= n;
  return sum;
}

double compression_rate(std::size_t dim, std::int64_t upstream, std::int64_t downstream) {
  const std::int64_t total = upstream + downstream;
  if (total <= 0) return std::numeric_limits<double>::infinity();
  return 2.0 * static_cast<double>(dim) / static_cast<double>(total);
}

namespace {

void check_workers(std::span<const std::vector<double>> workers, const ProtocolConfig& cfg) {
  cfg.validate();
  if (workers.empty()) throw ArgumentError("aggregation needs at least one worker");
  for (std::size_t w = 0; w < workers.size(); ++w) {
    if (workers[w].size() != cfg.sketch.dim) {
      throw ArgumentError("worker " + std::to_string(w) + " vector has length " +
                          std::to_string(workers[w].size()) + ", expected " +
                          std::to_string(cfg.sketch.dim));
    }
  }
}

// Shared body of the plain and scaled protocols. `v_hat` empty means unit
// scaling.
AggregationResult aggregate(std::span<const std::vector<double>> workers,
                            std::span<const double> v_hat, const ProtocolConfig& cfg) {
  const std::size_t n = workers.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  const bool scaled = !v_hat.empty();

  // Round one.
  CountSketch merged(cfg.sketch);
  for (const auto& w : workers) merged.merge(sketch_vector(cfg.sketch, w));
  merged.scale(inv_n);

  std::vector<double> estimates;
  if (scaled && cfg.unsketch_mode == UnsketchMode::kBucketRescale) {
    CountSketch rescaled = merged;
    for (std::size_t i = 0; i < cfg.sketch.dim; ++i) {
      rescaled.scale_buckets_of(i, 1.0 / std::sqrt(v_hat[i]));
    }
    estimates = rescaled.estimate_all();
  } else {
    estimates = merged.estimate_all();
    if (scaled) {
      for (std::size_t i = 0; i < estimates.size(); ++i) estimates[i] /= std::sqrt(v_hat[i]);
    }
  }

  AggregationResult result;
  result.candidate_indices = detail::rank_by_magnitude(estimates, cfg.candidate_count());

  // Round two: exact values at the candidates, averaged in worker order.
  const auto& cand = result.candidate_indices;
  std::vector<double> exact_mean(cand.size(), 0.0);
  for (const auto& w : workers) {
    for (std::size_t c = 0; c < cand.size(); ++c) exact_mean[c] += w[cand[c]];
  }
  for (double& m : exact_mean) m /= static_cast<double>(n);

  std::vector<double> keys = exact_mean;
  if (scaled) {
    for (std::size_t c = 0; c < cand.size(); ++c) keys[c] /= std::sqrt(v_hat[cand[c]]);
  }
  const std::vector<std::size_t> picked = detail::rank_by_magnitude(keys, cfg.k, cand);

  std::vector<std::size_t> positions = picked;
  std::sort(positions.begin(), positions.end(),
            [&](std::size_t a, std::size_t b) { return cand[a] < cand[b]; });

  result.chosen_indices.reserve(cfg.k);
  result.global_update.dim = cfg.sketch.dim;
  for (std::size_t pos : positions) {
    result.chosen_indices.push_back(cand[pos]);
    result.global_update.indices.push_back(cand[pos]);
    result.global_update.values.push_back(exact_mean[pos]);
  }
  result.per_worker_updates.reserve(n);
  for (const auto& w : workers) {
    SparseUpdate u;
    u.dim = cfg.sketch.dim;
    u.indices = result.chosen_indices;
    u.values.reserve(u.indices.size());
    for (std::size_t j : u.indices) u.values.push_back(w[j]);
    result.per_worker_updates.push_back(std::move(u));
  }

  result.upstream_scalars =
      static_cast<std::int64_t>(cfg.sketch.size() + cfg.candidate_count());
  result.downstream_scalars = static_cast<std::int64_t>(cfg.k);
  return result;
}

}  // namespace

AggregationResult sketched_topk_aggregate(std::span<const std::vector<double>> worker_vectors,
                                          const ProtocolConfig& cfg) {
  check_workers(worker_vectors, cfg);
  return aggregate(worker_vectors, {}, cfg);
}

AggregationResult sketched_topk_aggregate_scaled(
    std::span<const std::vector<double>> worker_vectors, std::span<const double> v_hat,
    const ProtocolConfig& cfg) {
  check_workers(worker_vectors, cfg);
  if (v_hat.size() != cfg.sketch.dim) {
    throw ArgumentError("v_hat has length " + std::to_string(v_hat.size()) + ", expected " +
                        std::to_string(cfg.sketch.dim));
  }
  for (std::size_t i = 0; i < v_hat.size(); ++i) {
    if (!(v_hat[i] > 0.0) || !std::isfinite(v_hat[i])) {
      throw ArgumentError("v_hat[" + std::to_string(i) + "] must be finite and positive");
    }
  }
  return aggregate(worker_vectors, v_hat, cfg);
}

}  // namespace sketchadam
