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
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace sketchadam {

/// Outcome of one property check. `measured` is compared against `bound` in
/// the direction described by `detail`; `informational` results are
/// reported but never fail a suite.
struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
  bool informational = false;
};

/// Runs the property suite "sketch", "compressor", "optimizer" or "all".
/// Throws ArgumentError for an unknown suite name.
std::vector<PropertyResult> verify_suite(std::string_view suite, std::uint64_t seed);

/// One line per result: "PASS|FAIL|INFO suite/name measured=... bound=... detail".
std::string format_result(const PropertyResult& result);

/// Vector of length `dim` with `heavy` coordinates of magnitude `magnitude`
/// (random sign, random positions) on top of standard normal noise.
std::vector<double> planted_vector(std::size_t dim, std::size_t heavy, double magnitude,
                                   std::mt19937_64& rng);

/// Upper quantile of the chi-square distribution (Wilson-Hilferty).
double chi_square_quantile(double dof, double z);

}  // namespace sketchadam
