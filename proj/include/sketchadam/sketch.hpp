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

namespace sketchadam {

/// Shape and hash seed of a Count Sketch over vectors of length `dim`.
///
/// Workers that agree on a config agree on the hash family, so their sketches
/// can be merged on the server without exchanging any hash state.
struct SketchConfig {
  std::size_t rows = 5;
  std::size_t cols = 400;
  std::uint64_t seed = 0;
  std::size_t dim = 1;

  /// Throws ArgumentError unless rows, cols and dim are all positive.
  void validate() const;

  std::size_t size() const noexcept { return rows * cols; }

  friend bool operator==(const SketchConfig&, const SketchConfig&) = default;
};

/// Bucket of coordinate `index` in row `row`, in [0, cols).
std::size_t bucket_hash(const SketchConfig& config, std::size_t row, std::size_t index);

/// Sign of coordinate `index` in row `row`, either -1 or +1.
int sign_hash(const SketchConfig& config, std::size_t row, std::size_t index);

/// Count Sketch: an r x c table of real-valued counters.
///
/// Inserting value f at coordinate i adds sign_j(i) * f to cell
/// (j, bucket_j(i)) of every row j. The table is linear in the inserted
/// vector, so sketches of different vectors (same config) can be summed and
/// scaled. Point queries return the median over rows of sign_j(i) times the
/// cell the coordinate hashes to.
class CountSketch {
 public:
  explicit CountSketch(const SketchConfig& config);

  /// Sketch of a dense vector; exact zeros are skipped.
  static CountSketch from_vector(const SketchConfig& config, std::span<const double> vector);

  const SketchConfig& config() const noexcept { return config_; }

  /// Row-major r x c table.
  std::span<const double> table() const noexcept { return table_; }
  double cell(std::size_t row, std::size_t col) const { return table_.at(row * config_.cols + col); }

  void accumulate(std::size_t index, double value);

  /// Cell-wise sum with a sketch of the same config.
  CountSketch& merge(const CountSketch& other);

  CountSketch& scale(double factor);

  /// Multiplies each of the r cells that coordinate `index` hashes to.
  void scale_buckets_of(std::size_t index, double factor);

  /// Median-of-rows point query. For an even number of rows the mean of the
  /// two middle values is returned.
  double estimate(std::size_t index) const;

  /// estimate() for every coordinate in [0, dim).
  std::vector<double> estimate_all() const;

  /// The m coordinates with the largest |estimate|, in decreasing order of
  /// magnitude, ties broken by lower index.
  std::vector<std::size_t> heavy_candidates(std::size_t m) const;

  /// Wire format: rows, cols, seed, dim as little-endian u64, then the
  /// table as little-endian f64 in row-major order.
  std::vector<std::uint8_t> serialize() const;
  static CountSketch deserialize(std::span<const std::uint8_t> bytes);

  friend bool operator==(const CountSketch&, const CountSketch&) = default;

 private:
  SketchConfig config_;
  std::vector<double> table_;
};

CountSketch sketch_vector(const SketchConfig& config, std::span<const double> vector);
CountSketch merge(const CountSketch& a, const CountSketch& b);
CountSketch scale(const CountSketch& sketch, double factor);

/// Median of the values (mean of the two middle order statistics when the
/// count is even). `values` is reordered.
double median_inplace(std::span<double> values);

}  // namespace sketchadam
