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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sketchadam {

// Bad argument to a library call (out-of-range index, length mismatch, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two sketches built from different configs cannot be combined.
class IncompatibleSketchError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// Non-finite value encountered during an optimizer step. Carries the
// iteration so the harness can report where the run aborted.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::int64_t iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}

  std::int64_t iteration() const noexcept { return iteration_; }

 private:
  std::int64_t iteration_;
};

// A runtime invariant check (shadow identity, v_hat monotonicity) failed.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(const std::string& what, std::int64_t iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}

  std::int64_t iteration() const noexcept { return iteration_; }

 private:
  std::int64_t iteration_;
};

// Malformed or inconsistent experiment configuration. `key` names the
// offending JSON key when there is one.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::string key = {})
      : std::runtime_error(what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace sketchadam
