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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sketchadam/compressors.hpp"

namespace sketchadam {

struct HyperParams {
  double alpha = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-6;
  std::int64_t horizon = 1000;  // T
  std::size_t n_workers = 1;

  void validate() const;

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

/// Step-size schedule family. Parameter averaging uses alpha / sqrt(1 + T),
/// gradient averaging alpha / sqrt(1 + T / n).
enum class Schedule { kParameterAveraging, kGradientAveraging };

double step_size(const HyperParams& params, Schedule schedule);

/// alpha_{t-1} / alpha_t, defined as 1 at t = 1. The bundled schedules are
/// constant in t, so this is always 1.
double error_rescale(const HyperParams& params, Schedule schedule, std::int64_t t);

/// Per-iteration diagnostics reported by every optimizer step.
struct StepDiagnostics {
  double contraction_ratio = 0.0;  // ||D - D~||^2 / ||D~||^2 (0 when D~ = 0)
  double topk_overlap = 1.0;       // |chosen n true top-k| / k
  double shadow_gap = 0.0;         // max-abs violation of the shadow identity; NaN if untracked
  std::int64_t upstream_scalars = 0;
  std::int64_t downstream_scalars = 0;
};

// ---------------------------------------------------------------------------
// Parameter averaging.

struct PAWorkerState {
  std::vector<double> m;
  std::vector<double> v;
  std::vector<double> v_hat;
  std::vector<double> e;

  static PAWorkerState initial(std::size_t dim, double epsilon);
};

struct PAState {
  std::vector<PAWorkerState> workers;
  std::vector<double> x;
  std::vector<double> shadow_x;  // empty when not tracked
  bool check_invariants = true;

  static PAState initial(std::vector<double> x0, std::size_t n_workers, double epsilon,
                         bool check_invariants = true);
};

/// One synchronous round of sketched AMSGrad with parameter averaging.
/// Each worker keeps its own moments; the compressed payload is
/// m / sqrt(v_hat) plus the rescaled error.
StepDiagnostics pa_step(PAState& state, std::span<const std::vector<double>> grads,
                        const HyperParams& params, const ProtocolConfig& cfg, std::int64_t t);

// ---------------------------------------------------------------------------
// Gradient averaging.

struct GAWorkerState {
  std::vector<double> m;
  std::vector<double> e;
};

struct GAServerState {
  std::vector<double> x;
  std::vector<double> v;
  std::vector<double> v_hat;
  std::vector<std::size_t> last_indices;  // I_{t-1}; empty before the first step
  std::vector<double> shadow_x;           // empty when not tracked
};

/// Which scale the worker error lives in.
enum class GaErrorMode {
  // Error is the unscaled payload with the chosen coordinates zeroed; it is
  // exactly zero on I_t and the shadow identity holds.
  kUnscaled,
  // Subtract the v_hat-scaled restriction from the unscaled payload. Kept
  // for comparison only; the shadow identity does not hold and is not
  // enforced.
  kLiteralMixed,
};

struct GAState {
  std::vector<GAWorkerState> workers;
  GAServerState server;
  bool check_invariants = true;
  GaErrorMode error_mode = GaErrorMode::kUnscaled;

  static GAState initial(std::vector<double> x0, std::size_t n_workers, double epsilon,
                         bool check_invariants = true,
                         GaErrorMode error_mode = GaErrorMode::kUnscaled);
};

/// One synchronous round of sketched AMSGrad with gradient averaging. The
/// server owns the second moment, fed by worker gradients restricted to the
/// previous round's index set, and candidate selection ranks by
/// value / sqrt(v_hat).
StepDiagnostics ga_step(GAState& state, std::span<const std::vector<double>> grads,
                        const HyperParams& params, const ProtocolConfig& cfg, std::int64_t t);

// ---------------------------------------------------------------------------
// Uncompressed and baseline optimizers.

struct DenseAmsgradState {
  std::vector<double> x;
  std::vector<double> m;
  std::vector<double> v;
  std::vector<double> v_hat;
  // When false the second moment ignores the gradient of the first step,
  // mirroring a gradient-averaging server whose initial index set is empty.
  bool variance_from_first_step = true;

  static DenseAmsgradState initial(std::vector<double> x0, double epsilon,
                                   bool variance_from_first_step = true);
};

/// Distributed AMSGrad on the averaged gradient, step size alpha / sqrt(1 + T/n).
StepDiagnostics dense_amsgrad_step(DenseAmsgradState& state,
                                   std::span<const std::vector<double>> grads,
                                   const HyperParams& params, std::int64_t t);

struct SketchedSgdWorkerState {
  std::vector<double> u;  // momentum
  std::vector<double> e;  // error accumulator
};

struct SketchedSgdState {
  std::vector<SketchedSgdWorkerState> workers;
  std::vector<double> x;
  std::vector<double> shadow_x;
  bool check_invariants = true;

  static SketchedSgdState initial(std::vector<double> x0, std::size_t n_workers,
                                  bool check_invariants = true);
};

/// Sketched momentum SGD with error feedback: u <- beta1 u + g, payload u + e.
StepDiagnostics sketched_sgd_step(SketchedSgdState& state,
                                  std::span<const std::vector<double>> grads,
                                  const HyperParams& params, const ProtocolConfig& cfg,
                                  std::int64_t t);

/// x <- x - alpha_t * mean(g).
StepDiagnostics dense_sgd_step(std::vector<double>& x, std::span<const std::vector<double>> grads,
                               const HyperParams& params, std::int64_t t);

// ---------------------------------------------------------------------------
// Uniform interface for the training loop.

enum class OptimizerKind { kPA, kGA, kDenseAmsgrad, kSketchedSgd, kDenseSgd };

std::string_view to_string(OptimizerKind kind);
OptimizerKind optimizer_kind_from_string(std::string_view name);

/// Whether the optimizer uses the sketched protocol.
bool uses_protocol(OptimizerKind kind);

struct OptimizerOptions {
  bool check_invariants = true;
  GaErrorMode ga_error_mode = GaErrorMode::kUnscaled;
  // Dense AMSGrad skips the first-step variance update so that it coincides
  // with uncompressed gradient averaging.
  bool dense_variance_from_first_step = false;
};

class DistributedOptimizer {
 public:
  virtual ~DistributedOptimizer() = default;
  virtual StepDiagnostics step(std::span<const std::vector<double>> grads, std::int64_t t) = 0;
  virtual std::span<const double> x() const = 0;
};

std::unique_ptr<DistributedOptimizer> make_optimizer(OptimizerKind kind, std::vector<double> x0,
                                                     const HyperParams& params,
                                                     const ProtocolConfig& protocol,
                                                     const OptimizerOptions& options = {});

}  // namespace sketchadam
