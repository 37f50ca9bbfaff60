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

#include "sketchadam/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sketchadam/errors.hpp"

namespace sketchadam {
namespace {

constexpr double kShadowTolerance = 1e-9;

void check_grads(std::span<const std::vector<double>> grads, std::size_t n, std::size_t dim,
                 std::int64_t t) {
  if (t < 1) throw ArgumentError("iteration counter must start at 1");
  if (grads.size() != n) {
    throw ArgumentError("expected " + std::to_string(n) + " worker gradients, got " +
                        std::to_string(grads.size()));
  }
  for (std::size_t w = 0; w < grads.size(); ++w) {
    if (grads[w].size() != dim) {
      throw ArgumentError("gradient of worker " + std::to_string(w) + " has length " +
                          std::to_string(grads[w].size()) + ", expected " + std::to_string(dim));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      if (!std::isfinite(grads[w][j])) {
        std::ostringstream msg;
        msg << "non-finite gradient from worker " << w << " at coordinate " << j;
        throw NumericError(msg.str(), t);
      }
    }
  }
}

void check_protocol_dim(const ProtocolConfig& cfg, std::size_t dim) {
  cfg.validate();
  if (cfg.sketch.dim != dim) {
    throw ArgumentError("protocol sketch dim " + std::to_string(cfg.sketch.dim) +
                        " != parameter dim " + std::to_string(dim));
  }
}

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

// ||restricted - full||^2 / ||full||^2 and top-k overlap of the selection
// against the exact top-k of `full`.
void fill_compression_diagnostics(std::span<const double> full,
                                  std::span<const double> restricted,
                                  std::span<const std::size_t> chosen, std::size_t k,
                                  StepDiagnostics& diag) {
  const double denom = squared_norm(full);
  double num = 0.0;
  for (std::size_t j = 0; j < full.size(); ++j) {
    const double d = restricted[j] - full[j];
    num += d * d;
  }
  diag.contraction_ratio = denom > 0.0 ? num / denom : 0.0;
  const SparseUpdate truth = top_k(full, k);
  std::size_t hits = 0;
  for (std::size_t j : chosen) {
    if (std::binary_search(truth.indices.begin(), truth.indices.end(), j)) ++hits;
  }
  diag.topk_overlap = static_cast<double>(hits) / static_cast<double>(k);
}

// max_j |(x - shadow)_j - expected_j|
double shadow_violation(std::span<const double> x, std::span<const double> shadow,
                        std::span<const double> expected) {
  double worst = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, std::fabs((x[j] - shadow[j]) - expected[j]));
  }
  return worst;
}

void enforce_shadow(double gap, std::int64_t t, const char* which) {
  if (!(gap <= kShadowTolerance)) {
    std::ostringstream msg;
    msg << which << " shadow identity violated: gap " << gap << " > " << kShadowTolerance;
    throw InvariantViolation(msg.str(), t);
  }
}

void update_v_hat(std::vector<double>& v_hat, std::span<const double> v, bool check,
                  std::int64_t t) {
  for (std::size_t j = 0; j < v_hat.size(); ++j) {
    const double next = std::max(v_hat[j], v[j]);
    if (check && next < v_hat[j]) throw InvariantViolation("v_hat decreased", t);
    v_hat[j] = next;
  }
}

std::vector<double> mean_error(std::span<const std::vector<double>> errors, std::size_t dim) {
  std::vector<double> out(dim, 0.0);
  for (const auto& e : errors) {
    for (std::size_t j = 0; j < dim; ++j) out[j] += e[j];
  }
  const double n = static_cast<double>(errors.size());
  for (double& o : out) o /= n;
  return out;
}

}  // namespace

void HyperParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ArgumentError("alpha must be positive");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ArgumentError("epsilon must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ArgumentError("beta1 must lie in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ArgumentError("beta2 must lie in [0, 1)");
  if (horizon < 0) throw ArgumentError("horizon must be non-negative");
  if (n_workers < 1) throw ArgumentError("n_workers must be positive");
}

double step_size(const HyperParams& params, Schedule schedule) {
  const double T = static_cast<double>(params.horizon);
  switch (schedule) {
    case Schedule::kParameterAveraging:
      return params.alpha / std::sqrt(1.0 + T);
    case Schedule::kGradientAveraging:
      return params.alpha / std::sqrt(1.0 + T / static_cast<double>(params.n_workers));
  }
  return params.alpha;
}

double error_rescale(const HyperParams& params, Schedule schedule, std::int64_t t) {
  if (t <= 1) return 1.0;
  // Both schedules are constant in t; the ratio is written out so a
  // t-dependent schedule only needs step_size to change.
  return step_size(params, schedule) / step_size(params, schedule);
}

// ---------------------------------------------------------------------------

PAWorkerState PAWorkerState::initial(std::size_t dim, double epsilon) {
  return {std::vector<double>(dim, 0.0), std::vector<double>(dim, epsilon),
          std::vector<double>(dim, epsilon), std::vector<double>(dim, 0.0)};
}

PAState PAState::initial(std::vector<double> x0, std::size_t n_workers, double epsilon,
                         bool check_invariants) {
  PAState s;
  const std::size_t dim = x0.size();
  s.workers.assign(n_workers, PAWorkerState::initial(dim, epsilon));
  if (check_invariants) s.shadow_x = x0;
  s.x = std::move(x0);
  s.check_invariants = check_invariants;
  return s;
}

StepDiagnostics pa_step(PAState& state, std::span<const std::vector<double>> grads,
                        const HyperParams& params, const ProtocolConfig& cfg, std::int64_t t) {
  params.validate();
  const std::size_t dim = state.x.size();
  const std::size_t n = state.workers.size();
  check_grads(grads, n, dim, t);
  check_protocol_dim(cfg, dim);

  const double alpha_t = step_size(params, Schedule::kParameterAveraging);
  const double rho = error_rescale(params, Schedule::kParameterAveraging, t);
  const bool track = !state.shadow_x.empty();

  std::vector<std::vector<double>> payloads(n, std::vector<double>(dim));
  std::vector<double> shadow_step(track ? dim : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    PAWorkerState& w = state.workers[i];
    const auto& g = grads[i];
    std::vector<double> v_next(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      w.m[j] = params.beta1 * w.m[j] + (1.0 - params.beta1) * g[j];
      w.v[j] = params.beta2 * w.v[j] + (1.0 - params.beta2) * g[j] * g[j];
    }
    update_v_hat(w.v_hat, w.v, state.check_invariants, t);
    for (std::size_t j = 0; j < dim; ++j) {
      const double adam = w.m[j] / std::sqrt(w.v_hat[j]);
      payloads[i][j] = adam + rho * w.e[j];
      if (track) shadow_step[j] += adam;
    }
  }

  const AggregationResult agg = sketched_topk_aggregate(payloads, cfg);

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double>& e = state.workers[i].e;
    e = std::move(payloads[i]);
    for (std::size_t j : agg.chosen_indices) e[j] = 0.0;
  }
  agg.global_update.axpy_into(-alpha_t, state.x);

  StepDiagnostics diag;
  diag.upstream_scalars = agg.upstream_scalars;
  diag.downstream_scalars = agg.downstream_scalars;
  {
    // D~ = mean payload = (restricted mean) + (mean error after zeroing).
    std::vector<std::vector<double>> errors;
    errors.reserve(n);
    for (const auto& w : state.workers) errors.push_back(w.e);
    const std::vector<double> e_mean = mean_error(errors, dim);
    const std::vector<double> restricted = agg.global_update.densify();
    std::vector<double> full(dim);
    for (std::size_t j = 0; j < dim; ++j) full[j] = restricted[j] + e_mean[j];
    fill_compression_diagnostics(full, restricted, agg.chosen_indices, cfg.k, diag);

    if (track) {
      const double inv_n = 1.0 / static_cast<double>(n);
      for (std::size_t j = 0; j < dim; ++j) {
        state.shadow_x[j] -= alpha_t * (shadow_step[j] * inv_n);
      }
      std::vector<double> expected(dim);
      for (std::size_t j = 0; j < dim; ++j) expected[j] = alpha_t * e_mean[j];
      diag.shadow_gap = shadow_violation(state.x, state.shadow_x, expected);
      if (state.check_invariants) enforce_shadow(diag.shadow_gap, t, "parameter-averaging");
    } else {
      diag.shadow_gap = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return diag;
}

// ---------------------------------------------------------------------------

GAState GAState::initial(std::vector<double> x0, std::size_t n_workers, double epsilon,
                         bool check_invariants, GaErrorMode error_mode) {
  GAState s;
  const std::size_t dim = x0.size();
  s.workers.assign(n_workers, GAWorkerState{std::vector<double>(dim, 0.0),
                                            std::vector<double>(dim, 0.0)});
  s.server.v.assign(dim, epsilon);
  s.server.v_hat.assign(dim, epsilon);
  if (check_invariants) s.server.shadow_x = x0;
  s.server.x = std::move(x0);
  s.check_invariants = check_invariants;
  s.error_mode = error_mode;
  return s;
}

StepDiagnostics ga_step(GAState& state, std::span<const std::vector<double>> grads,
                        const HyperParams& params, const ProtocolConfig& cfg, std::int64_t t) {
  params.validate();
  GAServerState& server = state.server;
  const std::size_t dim = server.x.size();
  const std::size_t n = state.workers.size();
  check_grads(grads, n, dim, t);
  check_protocol_dim(cfg, dim);

  const double alpha_t = step_size(params, Schedule::kGradientAveraging);
  const double rho = error_rescale(params, Schedule::kGradientAveraging, t);
  const bool track = !server.shadow_x.empty();
  const double inv_n = 1.0 / static_cast<double>(n);

  // Workers: momentum, and h = g restricted to I_{t-1}.
  std::vector<double> h(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    GAWorkerState& w = state.workers[i];
    const auto& g = grads[i];
    for (std::size_t j = 0; j < dim; ++j) {
      w.m[j] = params.beta1 * w.m[j] + (1.0 - params.beta1) * g[j];
    }
    for (std::size_t j : server.last_indices) h[j] += g[j];
  }
  for (std::size_t j : server.last_indices) h[j] /= static_cast<double>(n);

  // Server second moment.
  for (std::size_t j = 0; j < dim; ++j) {
    server.v[j] = params.beta2 * server.v[j] + (1.0 - params.beta2) * h[j] * h[j];
  }
  update_v_hat(server.v_hat, server.v, state.check_invariants, t);

  std::vector<std::vector<double>> payloads(n, std::vector<double>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    const GAWorkerState& w = state.workers[i];
    for (std::size_t j = 0; j < dim; ++j) payloads[i][j] = w.m[j] + rho * w.e[j];
  }

  const AggregationResult agg = sketched_topk_aggregate_scaled(payloads, server.v_hat, cfg);

  std::vector<double> inv_sqrt_v_hat(dim);
  for (std::size_t j = 0; j < dim; ++j) inv_sqrt_v_hat[j] = 1.0 / std::sqrt(server.v_hat[j]);

  // Scaled mean payload D~, before the payloads are consumed.
  std::vector<double> full(dim, 0.0);
  for (const auto& p : payloads) {
    for (std::size_t j = 0; j < dim; ++j) full[j] += p[j];
  }
  for (std::size_t j = 0; j < dim; ++j) full[j] = full[j] * inv_n * inv_sqrt_v_hat[j];

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double>& e = state.workers[i].e;
    e = std::move(payloads[i]);
    if (state.error_mode == GaErrorMode::kUnscaled) {
      for (std::size_t j : agg.chosen_indices) e[j] = 0.0;
    } else {
      for (std::size_t j : agg.chosen_indices) e[j] -= e[j] * inv_sqrt_v_hat[j];
    }
  }

  // Broadcast update D = v_hat^{-1/2} * mean of restricted payloads.
  std::vector<double> restricted(dim, 0.0);
  const SparseUpdate& mean_update = agg.global_update;
  for (std::size_t p = 0; p < mean_update.indices.size(); ++p) {
    const std::size_t j = mean_update.indices[p];
    restricted[j] = mean_update.values[p] * inv_sqrt_v_hat[j];
    server.x[j] -= alpha_t * restricted[j];
  }

  StepDiagnostics diag;
  diag.upstream_scalars = agg.upstream_scalars + static_cast<std::int64_t>(cfg.k);
  diag.downstream_scalars = agg.downstream_scalars;
  fill_compression_diagnostics(full, restricted, agg.chosen_indices, cfg.k, diag);

  if (state.check_invariants && state.error_mode == GaErrorMode::kUnscaled) {
    for (const auto& w : state.workers) {
      for (std::size_t j : agg.chosen_indices) {
        if (w.e[j] != 0.0) throw InvariantViolation("error not zero on chosen index set", t);
      }
    }
  }

  if (track) {
    std::vector<double> m_mean(dim, 0.0);
    for (const auto& w : state.workers) {
      for (std::size_t j = 0; j < dim; ++j) m_mean[j] += w.m[j];
    }
    for (std::size_t j = 0; j < dim; ++j) {
      server.shadow_x[j] -= alpha_t * inv_sqrt_v_hat[j] * (m_mean[j] * inv_n);
    }
    std::vector<std::vector<double>> errors;
    errors.reserve(n);
    for (const auto& w : state.workers) errors.push_back(w.e);
    const std::vector<double> e_mean = mean_error(errors, dim);
    std::vector<double> expected(dim);
    for (std::size_t j = 0; j < dim; ++j) expected[j] = alpha_t * inv_sqrt_v_hat[j] * e_mean[j];
    diag.shadow_gap = shadow_violation(server.x, server.shadow_x, expected);
    if (state.check_invariants && state.error_mode == GaErrorMode::kUnscaled) {
      enforce_shadow(diag.shadow_gap, t, "gradient-averaging");
    }
  } else {
    diag.shadow_gap = std::numeric_limits<double>::quiet_NaN();
  }

  server.last_indices = agg.chosen_indices;
  return diag;
}

// ---------------------------------------------------------------------------

DenseAmsgradState DenseAmsgradState::initial(std::vector<double> x0, double epsilon,
                                             bool variance_from_first_step) {
  DenseAmsgradState s;
  const std::size_t dim = x0.size();
  s.x = std::move(x0);
  s.m.assign(dim, 0.0);
  s.v.assign(dim, epsilon);
  s.v_hat.assign(dim, epsilon);
  s.variance_from_first_step = variance_from_first_step;
  return s;
}

StepDiagnostics dense_amsgrad_step(DenseAmsgradState& state,
                                   std::span<const std::vector<double>> grads,
                                   const HyperParams& params, std::int64_t t) {
  params.validate();
  const std::size_t dim = state.x.size();
  check_grads(grads, grads.size(), dim, t);
  if (grads.empty()) throw ArgumentError("dense_amsgrad_step: no worker gradients");

  const std::vector<double> g = mean_of(grads);
  const double alpha_t = step_size(params, Schedule::kGradientAveraging);
  const bool feed_variance = state.variance_from_first_step || t > 1;
  for (std::size_t j = 0; j < dim; ++j) {
    state.m[j] = params.beta1 * state.m[j] + (1.0 - params.beta1) * g[j];
    const double g2 = feed_variance ? g[j] * g[j] : 0.0;
    state.v[j] = params.beta2 * state.v[j] + (1.0 - params.beta2) * g2;
    state.v_hat[j] = std::max(state.v_hat[j], state.v[j]);
    state.x[j] -= alpha_t * state.m[j] / std::sqrt(state.v_hat[j]);
  }
  StepDiagnostics diag;
  diag.upstream_scalars = static_cast<std::int64_t>(dim);
  diag.downstream_scalars = static_cast<std::int64_t>(dim);
  return diag;
}

SketchedSgdState SketchedSgdState::initial(std::vector<double> x0, std::size_t n_workers,
                                           bool check_invariants) {
  SketchedSgdState s;
  const std::size_t dim = x0.size();
  s.workers.assign(n_workers, SketchedSgdWorkerState{std::vector<double>(dim, 0.0),
                                                     std::vector<double>(dim, 0.0)});
  if (check_invariants) s.shadow_x = x0;
  s.x = std::move(x0);
  s.check_invariants = check_invariants;
  return s;
}

StepDiagnostics sketched_sgd_step(SketchedSgdState& state,
                                  std::span<const std::vector<double>> grads,
                                  const HyperParams& params, const ProtocolConfig& cfg,
                                  std::int64_t t) {
  params.validate();
  const std::size_t dim = state.x.size();
  const std::size_t n = state.workers.size();
  check_grads(grads, n, dim, t);
  check_protocol_dim(cfg, dim);

  const double alpha_t = step_size(params, Schedule::kParameterAveraging);
  const double rho = error_rescale(params, Schedule::kParameterAveraging, t);
  const bool track = !state.shadow_x.empty();

  std::vector<std::vector<double>> payloads(n, std::vector<double>(dim));
  std::vector<double> u_sum(track ? dim : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    SketchedSgdWorkerState& w = state.workers[i];
    for (std::size_t j = 0; j < dim; ++j) {
      w.u[j] = params.beta1 * w.u[j] + grads[i][j];
      payloads[i][j] = w.u[j] + rho * w.e[j];
      if (track) u_sum[j] += w.u[j];
    }
  }

  const AggregationResult agg = sketched_topk_aggregate(payloads, cfg);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double>& e = state.workers[i].e;
    e = std::move(payloads[i]);
    for (std::size_t j : agg.chosen_indices) e[j] = 0.0;
  }
  agg.global_update.axpy_into(-alpha_t, state.x);

  StepDiagnostics diag;
  diag.upstream_scalars = agg.upstream_scalars;
  diag.downstream_scalars = agg.downstream_scalars;

  std::vector<std::vector<double>> errors;
  errors.reserve(n);
  for (const auto& w : state.workers) errors.push_back(w.e);
  const std::vector<double> e_mean = mean_error(errors, dim);
  const std::vector<double> restricted = agg.global_update.densify();
  std::vector<double> full(dim);
  for (std::size_t j = 0; j < dim; ++j) full[j] = restricted[j] + e_mean[j];
  fill_compression_diagnostics(full, restricted, agg.chosen_indices, cfg.k, diag);

  if (track) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < dim; ++j) state.shadow_x[j] -= alpha_t * (u_sum[j] * inv_n);
    std::vector<double> expected(dim);
    for (std::size_t j = 0; j < dim; ++j) expected[j] = alpha_t * e_mean[j];
    diag.shadow_gap = shadow_violation(state.x, state.shadow_x, expected);
    if (state.check_invariants) enforce_shadow(diag.shadow_gap, t, "sketched-sgd");
  } else {
    diag.shadow_gap = std::numeric_limits<double>::quiet_NaN();
  }
  return diag;
}

StepDiagnostics dense_sgd_step(std::vector<double>& x, std::span<const std::vector<double>> grads,
                               const HyperParams& params, std::int64_t t) {
  params.validate();
  if (grads.empty()) throw ArgumentError("dense_sgd_step: no worker gradients");
  check_grads(grads, grads.size(), x.size(), t);
  const std::vector<double> g = mean_of(grads);
  const double alpha_t = step_size(params, Schedule::kParameterAveraging);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] -= alpha_t * g[j];
  StepDiagnostics diag;
  diag.upstream_scalars = static_cast<std::int64_t>(x.size());
  diag.downstream_scalars = static_cast<std::int64_t>(x.size());
  return diag;
}

// ---------------------------------------------------------------------------

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kPA: return "pa";
    case OptimizerKind::kGA: return "ga";
    case OptimizerKind::kDenseAmsgrad: return "dense_amsgrad";
    case OptimizerKind::kSketchedSgd: return "sketched_sgd";
    case OptimizerKind::kDenseSgd: return "dense_sgd";
  }
  return "?";
}

OptimizerKind optimizer_kind_from_string(std::string_view name) {
  for (OptimizerKind k : {OptimizerKind::kPA, OptimizerKind::kGA, OptimizerKind::kDenseAmsgrad,
                          OptimizerKind::kSketchedSgd, OptimizerKind::kDenseSgd}) {
    if (to_string(k) == name) return k;
  }
  throw ArgumentError("unknown optimizer variant '" + std::string(name) + "'");
}

bool uses_protocol(OptimizerKind kind) {
  return kind == OptimizerKind::kPA || kind == OptimizerKind::kGA ||
         kind == OptimizerKind::kSketchedSgd;
}

namespace {

class PAOptimizer final : public DistributedOptimizer {
 public:
  PAOptimizer(std::vector<double> x0, const HyperParams& p, const ProtocolConfig& c, bool check)
      : state_(PAState::initial(std::move(x0), p.n_workers, p.epsilon, check)),
        params_(p),
        protocol_(c) {}
  StepDiagnostics step(std::span<const std::vector<double>> g, std::int64_t t) override {
    return pa_step(state_, g, params_, protocol_, t);
  }
  std::span<const double> x() const override { return state_.x; }

 private:
  PAState state_;
  HyperParams params_;
  ProtocolConfig protocol_;
};

class GAOptimizer final : public DistributedOptimizer {
 public:
  GAOptimizer(std::vector<double> x0, const HyperParams& p, const ProtocolConfig& c, bool check,
              GaErrorMode mode)
      : state_(GAState::initial(std::move(x0), p.n_workers, p.epsilon, check, mode)),
        params_(p),
        protocol_(c) {}
  StepDiagnostics step(std::span<const std::vector<double>> g, std::int64_t t) override {
    return ga_step(state_, g, params_, protocol_, t);
  }
  std::span<const double> x() const override { return state_.server.x; }

 private:
  GAState state_;
  HyperParams params_;
  ProtocolConfig protocol_;
};

class DenseAmsgradOptimizer final : public DistributedOptimizer {
 public:
  DenseAmsgradOptimizer(std::vector<double> x0, const HyperParams& p, bool first_step_variance)
      : state_(DenseAmsgradState::initial(std::move(x0), p.epsilon, first_step_variance)),
        params_(p) {}
  StepDiagnostics step(std::span<const std::vector<double>> g, std::int64_t t) override {
    if (g.size() != params_.n_workers) throw ArgumentError("wrong number of worker gradients");
    return dense_amsgrad_step(state_, g, params_, t);
  }
  std::span<const double> x() const override { return state_.x; }

 private:
  DenseAmsgradState state_;
  HyperParams params_;
};

class SketchedSgdOptimizer final : public DistributedOptimizer {
 public:
  SketchedSgdOptimizer(std::vector<double> x0, const HyperParams& p, const ProtocolConfig& c,
                       bool check)
      : state_(SketchedSgdState::initial(std::move(x0), p.n_workers, check)),
        params_(p),
        protocol_(c) {}
  StepDiagnostics step(std::span<const std::vector<double>> g, std::int64_t t) override {
    return sketched_sgd_step(state_, g, params_, protocol_, t);
  }
  std::span<const double> x() const override { return state_.x; }

 private:
  SketchedSgdState state_;
  HyperParams params_;
  ProtocolConfig protocol_;
};

class DenseSgdOptimizer final : public DistributedOptimizer {
 public:
  DenseSgdOptimizer(std::vector<double> x0, const HyperParams& p) : x_(std::move(x0)), params_(p) {}
  StepDiagnostics step(std::span<const std::vector<double>> g, std::int64_t t) override {
    if (g.size() != params_.n_workers) throw ArgumentError("wrong number of worker gradients");
    return dense_sgd_step(x_, g, params_, t);
  }
  std::span<const double> x() const override { return x_; }

 private:
  std::vector<double> x_;
  HyperParams params_;
};

}  // namespace

std::unique_ptr<DistributedOptimizer> make_optimizer(OptimizerKind kind, std::vector<double> x0,
                                                     const HyperParams& params,
                                                     const ProtocolConfig& protocol,
                                                     const OptimizerOptions& options) {
  params.validate();
  if (uses_protocol(kind)) check_protocol_dim(protocol, x0.size());
  switch (kind) {
    case OptimizerKind::kPA:
      return std::make_unique<PAOptimizer>(std::move(x0), params, protocol,
                                           options.check_invariants);
    case OptimizerKind::kGA:
      return std::make_unique<GAOptimizer>(std::move(x0), params, protocol,
                                           options.check_invariants, options.ga_error_mode);
    case OptimizerKind::kDenseAmsgrad:
      return std::make_unique<DenseAmsgradOptimizer>(std::move(x0), params,
                                                     options.dense_variance_from_first_step);
    case OptimizerKind::kSketchedSgd:
      return std::make_unique<SketchedSgdOptimizer>(std::move(x0), params, protocol,
                                                    options.check_invariants);
    case OptimizerKind::kDenseSgd:
      return std::make_unique<DenseSgdOptimizer>(std::move(x0), params);
  }
  throw ArgumentError("unknown optimizer kind");
}

}  // namespace sketchadam
