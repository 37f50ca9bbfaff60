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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace sketchadam::detail {

// Positions (into `keys`) of the m entries of largest magnitude, ordered by
// decreasing magnitude. Equal magnitudes rank the lower id first, where the
// id of a position is ids[position] (or the position itself if ids is empty).
inline std::vector<std::size_t> rank_by_magnitude(std::span<const double> keys, std::size_t m,
                                                  std::span<const std::size_t> ids = {}) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  m = std::min(m, order.size());
  auto before = [&](std::size_t a, std::size_t b) {
    const double ma = std::fabs(keys[a]);
    const double mb = std::fabs(keys[b]);
    if (ma != mb) return ma > mb;
    return ids.empty() ? a < b : ids[a] < ids[b];
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(),
                    before);
  order.resize(m);
  return order;
}

}  // namespace sketchadam::detail
