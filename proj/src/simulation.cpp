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

#include "sketchadam/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>

#include "sketchadam/errors.hpp"

namespace sketchadam {
namespace {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Independent sub-seeds of the run seed.
enum class Stream : std::uint64_t { kProblem = 1, kPartition = 2, kSketch = 3, kSampling = 4 };

std::uint64_t derive_seed(std::uint64_t seed, Stream stream) {
  return mix64(seed ^ mix64(static_cast<std::uint64_t>(stream)));
}

std::uint64_t batch_seed(std::uint64_t sampling_seed, std::size_t worker, std::int64_t t) {
  return mix64(sampling_seed ^ mix64((static_cast<std::uint64_t>(worker) << 40) ^
                                     static_cast<std::uint64_t>(t)));
}

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  return kind == ProblemKind::kQuadratic ? "quadratic" : "logreg";
}

ProblemKind problem_kind_from_string(std::string_view name) {
  if (name == "quadratic") return ProblemKind::kQuadratic;
  if (name == "logreg") return ProblemKind::kLogReg;
  throw ArgumentError("unknown problem kind '" + std::string(name) + "'");
}

std::size_t problem_dim(const ProblemSpec& spec) {
  return spec.kind == ProblemKind::kQuadratic ? spec.quadratic.dim
                                              : spec.logreg.n_classes * spec.logreg.features;
}

std::unique_ptr<Problem> build_problem(const RunConfig& config) {
  const std::uint64_t seed = derive_seed(config.seed, Stream::kProblem);
  if (config.problem.kind == ProblemKind::kQuadratic) {
    QuadraticSpec spec = config.problem.quadratic;
    spec.seed = seed;
    return std::make_unique<QuadraticProblem>(spec);
  }
  LogRegSpec spec = config.problem.logreg;
  spec.seed = seed;
  return std::make_unique<LogisticRegressionProblem>(spec);
}

void RunConfig::validate() const {
  hyper.validate();
  if (batch_size < 1) throw ArgumentError("batch_size must be >= 1");
  const std::size_t dim = problem_dim(problem);
  if (dim < 1) throw ArgumentError("problem dimension must be >= 1");
  const std::size_t samples = problem.kind == ProblemKind::kQuadratic
                                  ? problem.quadratic.n_samples
                                  : problem.logreg.n_samples;
  if (hyper.n_workers > samples) {
    throw ArgumentError("more workers (" + std::to_string(hyper.n_workers) + ") than samples (" +
                        std::to_string(samples) + ")");
  }
  if (partition == PartitionMode::kLabelSkew && problem.kind != ProblemKind::kLogReg) {
    throw ArgumentError("label_skew partitioning needs a labeled problem");
  }
  if (!(skew_param >= 0.0) || !std::isfinite(skew_param)) {
    throw ArgumentError("skew_param must be finite and >= 0");
  }
  if (uses_protocol(variant)) {
    ProtocolConfig p = protocol;
    p.sketch.dim = dim;
    p.validate();
  }
}

std::int64_t iterations_to_threshold(std::span<const TraceRecord> trace, double threshold,
                                     std::size_t window, bool* reached) {
  window = std::max<std::size_t>(window, 1);
  double running = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    running += trace[i].grad_norm_sq;
    if (i >= window) running -= trace[i - window].grad_norm_sq;
    const std::size_t len = std::min(i + 1, window);
    if (running / static_cast<double>(len) <= threshold) {
      if (reached) *reached = true;
      return trace[i].iter;
    }
  }
  if (reached) *reached = false;
  return static_cast<std::int64_t>(trace.size());
}

RunResult run(const RunConfig& config, const StepObserver& observer) {
  config.validate();
  const auto problem = build_problem(config);
  const std::size_t dim = problem->dim();
  const std::size_t n = config.hyper.n_workers;

  const Partition part =
      partition_data(problem->labels(), problem->n_samples(), n, config.partition,
                     config.skew_param, derive_seed(config.seed, Stream::kPartition));

  ProtocolConfig protocol = config.protocol;
  protocol.sketch.dim = dim;
  protocol.sketch.seed = derive_seed(config.seed, Stream::kSketch);

  OptimizerOptions options;
  options.check_invariants = config.check_invariants;
  options.ga_error_mode = config.ga_error_mode;
  auto optimizer =
      make_optimizer(config.variant, problem->initial_point(), config.hyper, protocol, options);

  const std::uint64_t sampling_seed = derive_seed(config.seed, Stream::kSampling);
  RunResult result;
  result.dim = dim;
  result.trace.reserve(static_cast<std::size_t>(config.hyper.horizon));

  std::vector<std::vector<double>> grads(n);
  std::vector<std::size_t> batch(config.batch_size);
  for (std::int64_t t = 1; t <= config.hyper.horizon; ++t) {
    const std::span<const double> x = optimizer->x();

    TraceRecord rec;
    rec.iter = t;
    rec.train_loss = problem->full_loss(x);
    rec.grad_norm_sq = squared_norm(problem->full_gradient(x));
    if (!std::isfinite(rec.train_loss) || !std::isfinite(rec.grad_norm_sq)) {
      throw NumericError("training loss diverged", t);
    }

    for (std::size_t w = 0; w < n; ++w) {
      const auto& shard = part.shards[w];
      std::mt19937_64 rng(batch_seed(sampling_seed, w, t));
      std::uniform_int_distribution<std::size_t> pick(0, shard.size() - 1);
      for (std::size_t& b : batch) b = shard[pick(rng)];
      grads[w] = problem->gradient(x, batch);
      for (double g : grads[w]) {
        if (std::isfinite(g)) result.max_grad_inf = std::max(result.max_grad_inf, std::fabs(g));
      }
    }

    const StepDiagnostics diag = optimizer->step(grads, t);
    rec.upstream_scalars = diag.upstream_scalars;
    rec.downstream_scalars = diag.downstream_scalars;
    rec.compression_rate = compression_rate(dim, diag.upstream_scalars, diag.downstream_scalars);
    rec.contraction_ratio = diag.contraction_ratio;
    rec.topk_overlap = diag.topk_overlap;
    rec.shadow_gap = diag.shadow_gap;
    result.trace.push_back(rec);
    if (observer) observer(t, optimizer->x());
  }

  const std::span<const double> x = optimizer->x();
  result.x.assign(x.begin(), x.end());
  result.final_loss = problem->full_loss(result.x);
  result.final_grad_norm_sq = squared_norm(problem->full_gradient(result.x));
  return result;
}

std::vector<SpeedupRow> speedup_sweep(const RunConfig& base,
                                      std::span<const std::size_t> worker_counts,
                                      const SpeedupOptions& options) {
  if (worker_counts.empty()) throw ArgumentError("speedup_sweep: no worker counts");
  if (!(options.threshold > 0.0)) throw ArgumentError("speedup_sweep: threshold must be > 0");
  const double base_step = step_size(base.hyper, Schedule::kGradientAveraging);

  std::vector<SpeedupRow> rows;
  rows.reserve(worker_counts.size());
  for (std::size_t n : worker_counts) {
    RunConfig cfg = base;
    cfg.partition = PartitionMode::kIid;
    cfg.hyper.n_workers = n;
    if (!options.scale_step_with_n) {
      // Keep alpha / sqrt(1 + T/n) equal to the base value.
      cfg.hyper.alpha = base_step * std::sqrt(1.0 + static_cast<double>(cfg.hyper.horizon) /
                                                        static_cast<double>(n));
    }
    const RunResult r = run(cfg);
    SpeedupRow row;
    row.n_workers = n;
    row.iterations_to_threshold =
        iterations_to_threshold(r.trace, options.threshold, options.window, &row.reached);
    rows.push_back(row);
  }
  return rows;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace) {
  out << kTraceHeader << '\n';
  for (const TraceRecord& r : trace) {
    out << r.iter << ',' << format_double(r.train_loss) << ',' << format_double(r.grad_norm_sq)
        << ',' << r.upstream_scalars << ',' << r.downstream_scalars << ','
        << format_double(r.compression_rate) << ',' << format_double(r.contraction_ratio) << ','
        << format_double(r.topk_overlap) << ',' << format_double(r.shadow_gap) << '\n';
  }
}

}  // namespace sketchadam
