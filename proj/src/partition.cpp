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

#include "sketchadam/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "sketchadam/errors.hpp"

namespace sketchadam {
namespace {

std::vector<double> dirichlet(std::size_t n, double concentration, std::mt19937_64& rng) {
  std::vector<double> p(n, 0.0);
  if (concentration > 0.0) {
    std::gamma_distribution<double> gamma(concentration, 1.0);
    for (double& v : p) v = gamma(rng);
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (!(total > 0.0)) {
    // Degenerate draw (concentration 0 or every gamma underflowed).
    std::fill(p.begin(), p.end(), 0.0);
    p[0] = 1.0;
    return p;
  }
  for (double& v : p) v /= total;
  return p;
}

// Largest-remainder apportionment of `total` items by `weights` (summing to 1).
std::vector<std::size_t> apportion(std::span<const double> weights, std::size_t total) {
  std::vector<std::size_t> counts(weights.size());
  std::vector<double> remainder(weights.size());
  std::size_t assigned = 0;
  for (std::size_t w = 0; w < weights.size(); ++w) {
    const double exact = weights[w] * static_cast<double>(total);
    counts[w] = static_cast<std::size_t>(std::floor(exact));
    remainder[w] = exact - static_cast<double>(counts[w]);
    assigned += counts[w];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t r = 0; assigned < total; ++r, ++assigned) ++counts[order[r % order.size()]];
  while (assigned > total) {
    // Only reachable through rounding of weights summing slightly above 1.
    auto it = std::max_element(counts.begin(), counts.end());
    --*it;
    --assigned;
  }
  return counts;
}

}  // namespace

std::string_view to_string(PartitionMode mode) {
  return mode == PartitionMode::kIid ? "iid" : "label_skew";
}

PartitionMode partition_mode_from_string(std::string_view name) {
  if (name == "iid") return PartitionMode::kIid;
  if (name == "label_skew") return PartitionMode::kLabelSkew;
  throw ArgumentError("unknown partition mode '" + std::string(name) + "'");
}

std::vector<std::size_t> Partition::shard_of(std::size_t n_samples) const {
  std::vector<std::size_t> out(n_samples, shards.size());
  for (std::size_t w = 0; w < shards.size(); ++w) {
    for (std::size_t s : shards[w]) out.at(s) = w;
  }
  return out;
}

Partition partition_data(std::span<const int> labels, std::size_t n_samples, std::size_t n,
                         PartitionMode mode, double skew_param, std::uint64_t seed) {
  if (n_samples == 0) throw ArgumentError("partition: empty data set");
  if (n < 1) throw ArgumentError("partition: need at least one worker");
  if (n > n_samples) {
    throw ArgumentError("partition: " + std::to_string(n) + " workers but only " +
                        std::to_string(n_samples) + " samples");
  }
  if (!(skew_param >= 0.0) || !std::isfinite(skew_param)) {
    throw ArgumentError("partition: skew_param must be finite and >= 0");
  }

  Partition part;
  part.mode = mode;
  part.skew_param = skew_param;
  part.shards.assign(n, {});
  std::mt19937_64 rng(seed);

  if (mode == PartitionMode::kIid) {
    std::vector<std::size_t> order(n_samples);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t p = 0; p < order.size(); ++p) part.shards[p % n].push_back(order[p]);
    return part;
  }

  if (labels.size() != n_samples) {
    throw ArgumentError("partition: label_skew needs one label per sample");
  }
  const int max_label = *std::max_element(labels.begin(), labels.end());
  if (*std::min_element(labels.begin(), labels.end()) < 0) {
    throw ArgumentError("partition: labels must be non-negative");
  }
  const std::size_t n_classes = static_cast<std::size_t>(max_label) + 1;
  std::vector<std::vector<std::size_t>> by_class(n_classes);
  for (std::size_t s = 0; s < n_samples; ++s) {
    by_class[static_cast<std::size_t>(labels[s])].push_back(s);
  }

  for (std::size_t c = 0; c < n_classes; ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    std::shuffle(members.begin(), members.end(), rng);
    std::vector<double> weights = dirichlet(n, skew_param, rng);
    const std::size_t home = c * n / n_classes;
    const auto largest = static_cast<std::size_t>(
        std::max_element(weights.begin(), weights.end()) - weights.begin());
    std::swap(weights[largest], weights[home]);
    const std::vector<std::size_t> counts = apportion(weights, members.size());
    std::size_t next = 0;
    for (std::size_t w = 0; w < n; ++w) {
      for (std::size_t k = 0; k < counts[w]; ++k) part.shards[w].push_back(members[next++]);
    }
  }

  for (std::size_t w = 0; w < n; ++w) {
    if (!part.shards[w].empty()) continue;
    for (std::size_t donor = 0; donor < n; ++donor) {
      if (part.shards[donor].size() > 1) {
        part.shards[w].push_back(part.shards[donor].back());
        part.shards[donor].pop_back();
        break;
      }
    }
  }
  return part;
}

}  // namespace sketchadam
