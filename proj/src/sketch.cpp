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

#include "sketchadam/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "sketchadam/detail/ranking.hpp"
#include "sketchadam/errors.hpp"

namespace sketchadam {
namespace {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t row_key(std::uint64_t seed, std::size_t row) noexcept {
  return mix64(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(row) + 1)));
}

constexpr std::uint64_t index_key(std::size_t index) noexcept {
  return mix64(static_cast<std::uint64_t>(index) + 0xD1B54A32D192ED03ULL);
}

// Bucket from the high 32 bits, sign from bit 0.
struct Slot {
  std::size_t bucket;
  double sign;
};

inline Slot slot_of(std::uint64_t rkey, std::uint64_t ikey, std::size_t cols) noexcept {
  const std::uint64_t h = mix64(rkey ^ ikey);
  return {static_cast<std::size_t>((h >> 32) % cols), (h & 1ULL) ? 1.0 : -1.0};
}

void check_coordinate(const SketchConfig& config, std::size_t row, std::size_t index) {
  if (row >= config.rows) {
    throw ArgumentError("sketch row " + std::to_string(row) + " out of range [0, " +
                        std::to_string(config.rows) + ")");
  }
  if (index >= config.dim) {
    throw ArgumentError("sketch index " + std::to_string(index) + " out of range [0, " +
                        std::to_string(config.dim) + ")");
  }
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint64_t get_u64(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[offset + b]) << (8 * b);
  return v;
}

constexpr std::size_t kHeaderBytes = 4 * 8;

}  // namespace

void SketchConfig::validate() const {
  if (rows == 0 || cols == 0 || dim == 0) {
    throw ArgumentError("sketch config requires rows, cols and dim >= 1 (got rows=" +
                        std::to_string(rows) + ", cols=" + std::to_string(cols) +
                        ", dim=" + std::to_string(dim) + ")");
  }
}

std::size_t bucket_hash(const SketchConfig& config, std::size_t row, std::size_t index) {
  config.validate();
  check_coordinate(config, row, index);
  return slot_of(row_key(config.seed, row), index_key(index), config.cols).bucket;
}

int sign_hash(const SketchConfig& config, std::size_t row, std::size_t index) {
  config.validate();
  check_coordinate(config, row, index);
  return slot_of(row_key(config.seed, row), index_key(index), config.cols).sign > 0 ? 1 : -1;
}

double median_inplace(std::span<double> values) {
  if (values.empty()) throw ArgumentError("median of an empty range");
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

CountSketch::CountSketch(const SketchConfig& config) : config_(config) {
  config_.validate();
  table_.assign(config_.size(), 0.0);
}

CountSketch CountSketch::from_vector(const SketchConfig& config, std::span<const double> vector) {
  CountSketch sketch(config);
  if (vector.size() != config.dim) {
    throw ArgumentError("sketch_vector: vector length " + std::to_string(vector.size()) +
                        " != dim " + std::to_string(config.dim));
  }
  std::vector<std::uint64_t> rkeys(config.rows);
  for (std::size_t j = 0; j < config.rows; ++j) rkeys[j] = row_key(config.seed, j);
  for (std::size_t i = 0; i < vector.size(); ++i) {
    const double value = vector[i];
    if (value == 0.0) continue;
    if (!std::isfinite(value)) {
      throw ArgumentError("sketch_vector: non-finite value at index " + std::to_string(i));
    }
    const std::uint64_t ikey = index_key(i);
    for (std::size_t j = 0; j < config.rows; ++j) {
      const Slot s = slot_of(rkeys[j], ikey, config.cols);
      sketch.table_[j * config.cols + s.bucket] += s.sign * value;
    }
  }
  return sketch;
}

void CountSketch::accumulate(std::size_t index, double value) {
  check_coordinate(config_, 0, index);
  if (!std::isfinite(value)) {
    throw ArgumentError("accumulate: non-finite value at index " + std::to_string(index));
  }
  if (value == 0.0) return;
  const std::uint64_t ikey = index_key(index);
  for (std::size_t j = 0; j < config_.rows; ++j) {
    const Slot s = slot_of(row_key(config_.seed, j), ikey, config_.cols);
    table_[j * config_.cols + s.bucket] += s.sign * value;
  }
}

CountSketch& CountSketch::merge(const CountSketch& other) {
  if (!(other.config_ == config_)) {
    throw IncompatibleSketchError("cannot merge sketches with different configs");
  }
  for (std::size_t c = 0; c < table_.size(); ++c) table_[c] += other.table_[c];
  return *this;
}

CountSketch& CountSketch::scale(double factor) {
  if (!std::isfinite(factor)) throw ArgumentError("scale: non-finite factor");
  for (double& cell : table_) cell *= factor;
  return *this;
}

void CountSketch::scale_buckets_of(std::size_t index, double factor) {
  check_coordinate(config_, 0, index);
  if (!std::isfinite(factor)) throw ArgumentError("scale_buckets_of: non-finite factor");
  const std::uint64_t ikey = index_key(index);
  for (std::size_t j = 0; j < config_.rows; ++j) {
    const Slot s = slot_of(row_key(config_.seed, j), ikey, config_.cols);
    table_[j * config_.cols + s.bucket] *= factor;
  }
}

double CountSketch::estimate(std::size_t index) const {
  check_coordinate(config_, 0, index);
  const std::uint64_t ikey = index_key(index);
  std::vector<double> votes(config_.rows);
  for (std::size_t j = 0; j < config_.rows; ++j) {
    const Slot s = slot_of(row_key(config_.seed, j), ikey, config_.cols);
    votes[j] = s.sign * table_[j * config_.cols + s.bucket];
  }
  return median_inplace(votes);
}

std::vector<double> CountSketch::estimate_all() const {
  std::vector<std::uint64_t> rkeys(config_.rows);
  for (std::size_t j = 0; j < config_.rows; ++j) rkeys[j] = row_key(config_.seed, j);
  std::vector<double> out(config_.dim);
  std::vector<double> votes(config_.rows);
  for (std::size_t i = 0; i < config_.dim; ++i) {
    const std::uint64_t ikey = index_key(i);
    for (std::size_t j = 0; j < config_.rows; ++j) {
      const Slot s = slot_of(rkeys[j], ikey, config_.cols);
      votes[j] = s.sign * table_[j * config_.cols + s.bucket];
    }
    out[i] = median_inplace(votes);
  }
  return out;
}

std::vector<std::size_t> CountSketch::heavy_candidates(std::size_t m) const {
  if (m < 1 || m > config_.dim) {
    throw ArgumentError("heavy_candidates: m=" + std::to_string(m) + " outside [1, " +
                        std::to_string(config_.dim) + "]");
  }
  const std::vector<double> est = estimate_all();
  return detail::rank_by_magnitude(est, m);
}

std::vector<std::uint8_t> CountSketch::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + 8 * table_.size());
  put_u64(out, config_.rows);
  put_u64(out, config_.cols);
  put_u64(out, config_.seed);
  put_u64(out, config_.dim);
  for (double cell : table_) put_u64(out, std::bit_cast<std::uint64_t>(cell));
  return out;
}

CountSketch CountSketch::deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) throw ArgumentError("sketch payload shorter than header");
  SketchConfig config;
  config.rows = static_cast<std::size_t>(get_u64(bytes, 0));
  config.cols = static_cast<std::size_t>(get_u64(bytes, 8));
  config.seed = get_u64(bytes, 16);
  config.dim = static_cast<std::size_t>(get_u64(bytes, 24));
  config.validate();
  if (config.cols > (bytes.size() - kHeaderBytes) / 8 / config.rows ||
      bytes.size() != kHeaderBytes + 8 * config.size()) {
    throw ArgumentError("sketch payload size does not match its header");
  }
  CountSketch sketch(config);
  for (std::size_t c = 0; c < sketch.table_.size(); ++c) {
    sketch.table_[c] = std::bit_cast<double>(get_u64(bytes, kHeaderBytes + 8 * c));
  }
  return sketch;
}

CountSketch sketch_vector(const SketchConfig& config, std::span<const double> vector) {
  return CountSketch::from_vector(config, vector);
}

CountSketch merge(const CountSketch& a, const CountSketch& b) {
  CountSketch out = a;
  out.merge(b);
  return out;
}

CountSketch scale(const CountSketch& sketch, double factor) {
  CountSketch out = sketch;
  out.scale(factor);
  return out;
}

}  // namespace sketchadam
