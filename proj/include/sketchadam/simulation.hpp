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
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sketchadam/compressors.hpp"
#include "sketchadam/optimizers.hpp"
#include "sketchadam/partition.hpp"
#include "sketchadam/problems.hpp"

namespace sketchadam {

enum class ProblemKind { kQuadratic, kLogReg };

std::string_view to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(std::string_view name);

struct ProblemSpec {
  ProblemKind kind = ProblemKind::kQuadratic;
  QuadraticSpec quadratic{};
  LogRegSpec logreg{};  // seeds inside the specs are overridden by the run seed

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Everything needed to reproduce one training run.
///
/// A single `seed` drives the data set, the partition, minibatch sampling
/// and the sketch hash family; the seed fields inside `problem` and
/// `protocol.sketch` are derived from it when the run starts.
struct RunConfig {
  ProblemSpec problem{};
  OptimizerKind variant = OptimizerKind::kGA;
  HyperParams hyper{};  // hyper.n_workers is the number of simulated workers
  ProtocolConfig protocol{};
  std::size_t batch_size = 32;
  PartitionMode partition = PartitionMode::kIid;
  double skew_param = 0.5;
  std::uint64_t seed = 0;
  bool check_invariants = true;
  GaErrorMode ga_error_mode = GaErrorMode::kUnscaled;

  /// Throws ArgumentError if any component is invalid on its own or the
  /// pieces disagree (e.g. P * k larger than the problem dimension). The
  /// sketch dimension is always taken from the problem.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct TraceRecord {
  std::int64_t iter = 0;
  double train_loss = 0.0;
  double grad_norm_sq = 0.0;
  std::int64_t upstream_scalars = 0;
  std::int64_t downstream_scalars = 0;
  double compression_rate = 0.0;
  double contraction_ratio = 0.0;
  double topk_overlap = 0.0;
  double shadow_gap = 0.0;
};

struct RunResult {
  std::vector<double> x;
  std::vector<TraceRecord> trace;
  double final_loss = 0.0;
  double final_grad_norm_sq = 0.0;
  double max_grad_inf = 0.0;  // largest |g_j| seen in any worker gradient
  std::size_t dim = 0;
};

/// Builds the problem described by `config` with its derived seed.
std::unique_ptr<Problem> build_problem(const RunConfig& config);

/// Problem dimension implied by the spec without building it.
std::size_t problem_dim(const ProblemSpec& spec);

/// Executes hyper.horizon synchronous rounds. Record t holds the full-batch
/// loss and squared gradient norm at x_t (before step t) together with the
/// step's communication and compression diagnostics.
///
/// `observer`, if set, is called after every step with t and x_{t+1}.
using StepObserver = std::function<void(std::int64_t, std::span<const double>)>;
RunResult run(const RunConfig& config, const StepObserver& observer = {});

struct SpeedupRow {
  std::size_t n_workers = 0;
  std::int64_t iterations_to_threshold = 0;
  bool reached = false;
};

struct SpeedupOptions {
  double threshold = 1e-2;  // on the smoothed grad_norm_sq
  std::size_t window = 1;   // trailing moving-average length
  // Scale alpha_t with n as in alpha / sqrt(1 + T/n). When false the step
  // size is held at the base configuration's value for every n.
  bool scale_step_with_n = true;
};

/// For each worker count: per-worker batch unchanged (total batch n times
/// larger), iid partition, first iteration where the trailing mean of
/// grad_norm_sq drops to the threshold, or T if it never does.
std::vector<SpeedupRow> speedup_sweep(const RunConfig& base,
                                      std::span<const std::size_t> worker_counts,
                                      const SpeedupOptions& options);

/// First iteration whose trailing `window` mean of grad_norm_sq is at most
/// `threshold`; returns trace.size() (as T) if never reached.
std::int64_t iterations_to_threshold(std::span<const TraceRecord> trace, double threshold,
                                     std::size_t window, bool* reached = nullptr);

inline constexpr std::string_view kTraceHeader =
    "iter,train_loss,grad_norm_sq,upstream_scalars,downstream_scalars,compression_rate,"
    "contraction_ratio,topk_overlap,shadow_gap";

/// Header plus one row per record; floats with 17 significant digits.
void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace);

/// "%.17g" formatting used in every CSV and summary number.
std::string format_double(double value);

}  // namespace sketchadam
