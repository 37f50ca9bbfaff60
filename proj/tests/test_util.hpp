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

// Shared oracles for the test binaries. Nothing here calls into the library
// except for types, so the oracles stay independent of the code under test.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

namespace sketchadam::testing {

inline std::vector<double> gaussian(std::size_t dim, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> v(dim);
  for (double& x : v) x = normal(rng);
  return v;
}

inline double norm_sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

// Mean of equally long vectors, summed in index order.
inline std::vector<double> mean(const std::vector<std::vector<double>>& vs) {
  std::vector<double> out(vs.front().size(), 0.0);
  for (const auto& v : vs) {
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += v[i];
  }
  for (double& x : out) x /= static_cast<double>(vs.size());
  return out;
}

// Ascending indices of the k largest |keys|; stable sort gives lower index
// first on ties.
inline std::vector<std::size_t> top_k_indices(const std::vector<double>& keys, std::size_t k) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(keys[a]) > std::fabs(keys[b]);
  });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

// Planted heavy support: `heavy` coordinates of magnitude `magnitude` with
// random signs at random positions, on top of N(0, tail^2) noise.
inline std::vector<double> planted(std::size_t dim, std::size_t heavy, double magnitude,
                                   std::mt19937_64& rng, double tail = 1.0) {
  std::vector<double> v = gaussian(dim, rng, tail);
  std::vector<std::size_t> ids(dim);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t h = 0; h < heavy; ++h) v[ids[h]] = coin(rng) ? magnitude : -magnitude;
  return v;
}

// Median with the mean of the two middle values for even counts.
inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace sketchadam::testing
