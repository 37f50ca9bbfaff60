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

#include "sketchadam/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "sketchadam/compressors.hpp"
#include "sketchadam/errors.hpp"
#include "sketchadam/optimizers.hpp"
#include "sketchadam/sketch.hpp"

namespace sketchadam {
namespace {

constexpr double kDelta = 0.05;

std::vector<double> gaussian_vector(std::size_t dim, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> v(dim);
  for (double& x : v) x = normal(rng);
  return v;
}

double norm_sq(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

PropertyResult at_most(std::string suite, std::string name, double measured, double bound,
                       std::string detail) {
  return {std::move(suite), std::move(name), measured <= bound, measured, bound,
          std::move(detail), false};
}

PropertyResult at_least(std::string suite, std::string name, double measured, double bound,
                        std::string detail) {
  return {std::move(suite), std::move(name), measured >= bound, measured, bound,
          std::move(detail), false};
}

// Indices of the k largest |values|, lower index first on ties, ascending.
// Deliberately independent of the library ranking helper.
std::vector<std::size_t> brute_force_top_k(const std::vector<double>& values, std::size_t k) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(values[a]) > std::fabs(values[b]);
  });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

// ---------------------------------------------------------------------------

void sketch_suite(std::uint64_t seed, std::vector<PropertyResult>& out) {
  const std::string s = "sketch";
  std::mt19937_64 rng(seed);

  {
    const SketchConfig cfg{5, 256, seed, 100000};
    double worst = 0.0;
    for (std::size_t row = 0; row < cfg.rows; ++row) {
      std::vector<double> counts(cfg.cols, 0.0);
      for (std::size_t i = 0; i < cfg.dim; ++i) counts[bucket_hash(cfg, row, i)] += 1.0;
      const double expected = static_cast<double>(cfg.dim) / static_cast<double>(cfg.cols);
      double chi2 = 0.0;
      for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
      worst = std::max(worst, chi2);
    }
    // Each row is tested at p > 0.01; the max over rows uses the Bonferroni
    // quantile 0.01 / rows = 0.002 (z = 2.878).
    out.push_back(at_most(s, "bucket_uniformity", worst, chi_square_quantile(255.0, 2.878),
                          "max chi-square over 5 rows, 1e5 indices into 256 buckets"));
  }
  {
    const SketchConfig cfg{5, 400, seed, 100000};
    double worst = 0.0;
    for (std::size_t row = 0; row < cfg.rows; ++row) {
      double sum = 0.0;
      for (std::size_t i = 0; i < cfg.dim; ++i) sum += sign_hash(cfg, row, i);
      worst = std::max(worst, std::fabs(sum / static_cast<double>(cfg.dim)));
    }
    out.push_back(at_most(s, "sign_balance", worst, 0.02, "max |mean sign| over rows"));
  }
  {
    const SketchConfig cfg{5, 50, seed, 100};
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto x = gaussian_vector(cfg.dim, rng);
      const auto y = gaussian_vector(cfg.dim, rng);
      std::uniform_real_distribution<double> coef(-3.0, 3.0);
      const double a = coef(rng);
      const double b = coef(rng);
      std::vector<double> combo(cfg.dim);
      for (std::size_t i = 0; i < cfg.dim; ++i) combo[i] = a * x[i] + b * y[i];
      const CountSketch lhs = sketch_vector(cfg, combo);
      const CountSketch sx = sketch_vector(cfg, x);
      const CountSketch sy = sketch_vector(cfg, y);
      double scale_ref = 0.0;
      for (std::size_t c = 0; c < cfg.size(); ++c) {
        scale_ref = std::max(scale_ref, std::fabs(a * sx.table()[c]) + std::fabs(b * sy.table()[c]));
      }
      for (std::size_t c = 0; c < cfg.size(); ++c) {
        const double diff = std::fabs(lhs.table()[c] - (a * sx.table()[c] + b * sy.table()[c]));
        worst = std::max(worst, scale_ref > 0.0 ? diff / scale_ref : diff);
      }
    }
    out.push_back(at_most(s, "linearity", worst, 1e-12,
                          "max relative cell error of S(ax+by) vs aS(x)+bS(y)"));
  }
  {
    const SketchConfig cfg{5, 50, seed, 100};
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
      auto x = gaussian_vector(cfg.dim, rng);
      const CountSketch halved = scale(sketch_vector(cfg, x), 0.5);
      for (double& v : x) v *= 0.5;
      if (!(halved == sketch_vector(cfg, x))) ++mismatches;
    }
    out.push_back(at_most(s, "power_of_two_scaling_exact", static_cast<double>(mismatches), 0.0,
                          "trials where scale(S(x), 0.5) != S(0.5 x) bitwise"));
  }
  {
    // Integer-valued inputs keep every partial sum exact, so merge order
    // cannot matter and the comparison is bitwise.
    const SketchConfig cfg{5, 50, seed, 100};
    std::uniform_int_distribution<int> small(-1000, 1000);
    std::size_t mismatches = 0;
    double worst_rel = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> total(cfg.dim, 0.0);
      CountSketch merged(cfg);
      CountSketch merged_real(cfg);
      std::vector<double> total_real(cfg.dim, 0.0);
      for (int w = 0; w < 8; ++w) {
        std::vector<double> v(cfg.dim);
        for (double& x : v) x = small(rng);
        for (std::size_t i = 0; i < cfg.dim; ++i) total[i] += v[i];
        merged.merge(sketch_vector(cfg, v));
        const auto r = gaussian_vector(cfg.dim, rng);
        for (std::size_t i = 0; i < cfg.dim; ++i) total_real[i] += r[i];
        merged_real.merge(sketch_vector(cfg, r));
      }
      const CountSketch direct = sketch_vector(cfg, total);
      if (!(merged == direct)) ++mismatches;
      for (std::size_t i = 0; i < cfg.dim; ++i) {
        if (merged.estimate(i) != direct.estimate(i)) ++mismatches;
      }
      const CountSketch direct_real = sketch_vector(cfg, total_real);
      for (std::size_t c = 0; c < cfg.size(); ++c) {
        const double ref = std::max(1.0, std::fabs(direct_real.table()[c]));
        worst_rel = std::max(worst_rel,
                             std::fabs(merged_real.table()[c] - direct_real.table()[c]) / ref);
      }
    }
    out.push_back(at_most(s, "merge_equals_sketch_of_sum_exact", static_cast<double>(mismatches),
                          0.0, "bitwise mismatches, 8 integer-valued workers"));
    out.push_back(at_most(s, "merge_equals_sketch_of_sum_real", worst_rel, 1e-12,
                          "max relative cell error, 8 Gaussian workers"));
  }
  {
    const SketchConfig cfg{7, 64, seed, 1000};
    std::uniform_int_distribution<std::size_t> pick(0, cfg.dim - 1);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      CountSketch sk(cfg);
      const std::size_t i = pick(rng);
      const double v = gaussian_vector(1, rng, 10.0)[0];
      sk.accumulate(i, v);
      worst = std::max(worst, std::fabs(sk.estimate(i) - v));
    }
    out.push_back(at_most(s, "single_coordinate_exact", worst, 0.0,
                          "max |estimate - value| for one-item sketches"));
  }
  {
    // Point-query accuracy in the squared form ghat^2 = g^2 +- eps ||g||^2.
    const std::size_t d = 10000;
    const SketchConfig cfg{7, 2000, seed, d};
    const double eps = 3.0 / static_cast<double>(cfg.cols);
    std::size_t squared_fail = 0;
    std::size_t literal_fail = 0;
    std::size_t queries = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
      SketchConfig c = cfg;
      c.seed = rng();
      const auto x = planted_vector(d, 100, 10.0, rng);
      const double nsq = norm_sq(x);
      const CountSketch sk = sketch_vector(c, x);
      const auto est = sk.estimate_all();
      for (std::size_t i = 0; i < d; ++i) {
        ++queries;
        if (std::fabs(est[i] * est[i] - x[i] * x[i]) > eps * nsq) ++squared_fail;
        if (std::fabs(est[i] - x[i]) > eps * std::sqrt(nsq)) ++literal_fail;
      }
    }
    const double q = static_cast<double>(queries);
    out.push_back(at_most(s, "point_query_squared_bound", squared_fail / q, kDelta,
                          "failure rate of |est^2 - x^2| <= (3/c)||x||^2, d=1e4 r=7 c=2000"));
    PropertyResult info = at_most(s, "point_query_linear_bound", literal_fail / q, kDelta,
                                  "failure rate of |est - x| <= (3/c)||x||, reported only");
    info.informational = true;
    out.push_back(info);
  }
  {
    const std::size_t d = 10000;
    const int trials = 200;
    int successes = 0;
    for (int trial = 0; trial < trials; ++trial) {
      const SketchConfig cfg{7, 2000, rng(), d};
      const auto x = planted_vector(d, 10, 10.0, rng);
      const auto planted = brute_force_top_k(x, 10);
      const auto cand = sketch_vector(cfg, x).heavy_candidates(20);
      const bool all = std::all_of(planted.begin(), planted.end(), [&](std::size_t p) {
        return std::find(cand.begin(), cand.end(), p) != cand.end();
      });
      if (all) ++successes;
    }
    out.push_back(at_least(s, "heavy_candidate_recovery", successes / double(trials), 1 - kDelta,
                           "planted 10-heavy vector, m=20, r=7, c=2000"));
  }
  {
    const SketchConfig cfg{3, 17, seed, 40};
    const CountSketch sk = sketch_vector(cfg, gaussian_vector(cfg.dim, rng));
    const auto bytes = sk.serialize();
    const bool same = CountSketch::deserialize(bytes) == sk &&
                      CountSketch::deserialize(bytes).serialize() == bytes &&
                      bytes.size() == 32 + 8 * cfg.size();
    out.push_back(at_least(s, "serialization_round_trip", same ? 1.0 : 0.0, 1.0,
                           "deserialize(serialize(S)) == S byte for byte"));
  }
}

// ---------------------------------------------------------------------------

void compressor_suite(std::uint64_t seed, std::vector<PropertyResult>& out) {
  const std::string s = "compressor";
  std::mt19937_64 rng(seed ^ 0xC0FFEEULL);

  {
    std::size_t violations = 0;
    std::uniform_int_distribution<std::size_t> len(1, 64);
    for (int trial = 0; trial < 10000; ++trial) {
      const auto x = gaussian_vector(len(rng), rng, 5.0);
      const auto c = sign_compress(x);
      double l1 = 0.0;
      double err = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        l1 += std::fabs(x[i]);
        err += (c[i] - x[i]) * (c[i] - x[i]);
      }
      const double bound = norm_sq(x) - l1 * l1 / static_cast<double>(x.size());
      if (err > bound + 1e-12 * std::max(1.0, norm_sq(x))) ++violations;
    }
    out.push_back(at_most(s, "sign_compress_contract", static_cast<double>(violations), 0.0,
                          "violations of ||C(x)-x||^2 <= ||x||^2 - ||x||_1^2/d"));
  }

  // Planted aggregation trials at d=1e4, r=7, c=2000, k=100, P=4, n=4.
  {
    const std::size_t d = 10000;
    const std::size_t n = 4;
    ProtocolConfig cfg;
    cfg.k = 100;
    cfg.p_factor = 4;
    cfg.sketch = {7, 2000, 0, d};
    const double bound_factor = 1.0 - static_cast<double>(cfg.k) / static_cast<double>(d);
    const int trials = 100;
    int contracted = 0;
    int safe = 0;
    int exact_mean = 0;
    int accounting = 0;
    int support_ok = 0;
    for (int trial = 0; trial < trials; ++trial) {
      cfg.sketch.seed = rng();
      const auto common = planted_vector(d, cfg.k, 10.0, rng);
      std::vector<std::vector<double>> workers(n);
      for (auto& w : workers) {
        w = gaussian_vector(d, rng);
        for (std::size_t j = 0; j < d; ++j) w[j] += common[j];
      }
      const AggregationResult agg = sketched_topk_aggregate(workers, cfg);
      std::vector<double> mean(d, 0.0);
      for (const auto& w : workers) {
        for (std::size_t j = 0; j < d; ++j) mean[j] += w[j];
      }
      for (double& m : mean) m /= static_cast<double>(n);
      const auto delta = agg.global_update.densify();
      double err = 0.0;
      for (std::size_t j = 0; j < d; ++j) err += (delta[j] - mean[j]) * (delta[j] - mean[j]);
      const double ref = norm_sq(mean);
      if (err <= bound_factor * ref) ++contracted;
      if (err <= ref) ++safe;

      std::vector<double> worker_mean(d, 0.0);
      for (const auto& u : agg.per_worker_updates) {
        const auto dense = u.densify();
        for (std::size_t j = 0; j < d; ++j) worker_mean[j] += dense[j];
      }
      for (double& m : worker_mean) m /= static_cast<double>(n);
      if (worker_mean == delta) ++exact_mean;

      const auto expected_up = static_cast<std::int64_t>(cfg.sketch.rows * cfg.sketch.cols +
                                                         cfg.p_factor * cfg.k);
      if (agg.upstream_scalars == expected_up &&
          agg.downstream_scalars == static_cast<std::int64_t>(cfg.k) &&
          agg.chosen_indices.size() == cfg.k &&
          agg.candidate_indices.size() == cfg.candidate_count()) {
        ++accounting;
      }
      const bool subset = std::all_of(
          agg.chosen_indices.begin(), agg.chosen_indices.end(), [&](std::size_t j) {
            return std::find(agg.candidate_indices.begin(), agg.candidate_indices.end(), j) !=
                   agg.candidate_indices.end();
          });
      if (subset) ++support_ok;
    }
    const double tr = trials;
    out.push_back(at_least(s, "contraction_frequency", contracted / tr, 1 - kDelta,
                           "||D - D~||^2 <= (1 - k/d)||D~||^2, d=1e4 k=100 P=4 r=7 c=2000"));
    out.push_back(at_least(s, "contraction_unconditional", safe / tr, 1.0,
                           "||D - D~|| <= ||D~|| on every trial"));
    out.push_back(at_least(s, "mean_consistency", exact_mean / tr, 1.0,
                           "densify(global) == mean of per-worker updates bitwise"));
    out.push_back(at_least(s, "communication_accounting", accounting / tr, 1.0,
                           "upstream r*c + P*k, downstream k, |I| = k, |cand| = P*k"));
    out.push_back(at_least(s, "support_within_candidates", support_ok / tr, 1.0,
                           "chosen indices contained in round-one candidates"));
  }

  // Planted common support at d=200 against the brute-force oracle.
  for (const bool scaled : {false, true}) {
    const std::size_t d = 200;
    ProtocolConfig cfg;
    cfg.k = 10;
    cfg.p_factor = 4;
    cfg.sketch = {7, 500, 0, d};
    const int trials = 200;
    int matches = 0;
    std::uniform_real_distribution<double> log_v(-4.0, 0.0);
    for (int trial = 0; trial < trials; ++trial) {
      cfg.sketch.seed = rng();
      std::vector<double> v_hat(d, 1.0);
      if (scaled) {
        for (double& v : v_hat) v = std::pow(10.0, log_v(rng));
      }
      // Heavy coordinates are made heavy in the ranking space.
      std::vector<double> common = planted_vector(d, cfg.k, 10.0, rng);
      for (std::size_t j = 0; j < d; ++j) common[j] *= std::sqrt(v_hat[j]);
      std::vector<std::vector<double>> workers(4);
      for (auto& w : workers) {
        w = gaussian_vector(d, rng, 0.5);
        for (std::size_t j = 0; j < d; ++j) w[j] = w[j] * std::sqrt(v_hat[j]) + common[j];
      }
      const AggregationResult agg = scaled
                                        ? sketched_topk_aggregate_scaled(workers, v_hat, cfg)
                                        : sketched_topk_aggregate(workers, cfg);
      std::vector<double> key(d, 0.0);
      for (const auto& w : workers) {
        for (std::size_t j = 0; j < d; ++j) key[j] += w[j];
      }
      for (std::size_t j = 0; j < d; ++j) key[j] = key[j] / 4.0 / std::sqrt(v_hat[j]);
      if (agg.chosen_indices == brute_force_top_k(key, cfg.k)) ++matches;
    }
    out.push_back(at_least(s, scaled ? "scaled_planted_recovery" : "planted_recovery",
                           matches / double(trials), 1 - kDelta,
                           scaled ? "chosen == brute-force top-k of |mean|/sqrt(v_hat), d=200"
                                  : "chosen == brute-force top-k of |mean|, d=200"));
  }

  {
    ProtocolConfig cfg;
    cfg.k = 1;
    cfg.p_factor = 2;
    cfg.sketch = {5, 64, seed, 2};
    const std::vector<std::vector<double>> workers{{3.0, 2.0}};
    const std::vector<double> v_hat{100.0, 1.0};
    const auto agg = sketched_topk_aggregate_scaled(workers, v_hat, cfg);
    const bool ok = agg.chosen_indices == std::vector<std::size_t>{1} &&
                    agg.global_update.values == std::vector<double>{2.0};
    out.push_back(at_least(s, "scaled_selection_hand_case", ok ? 1.0 : 0.0, 1.0,
                           "mean [3, 2], v_hat [100, 1], k=1 selects index 1"));
  }
}

// ---------------------------------------------------------------------------

void optimizer_suite(std::uint64_t seed, std::vector<PropertyResult>& out) {
  const std::string s = "optimizer";
  std::mt19937_64 rng(seed ^ 0x5EEDULL);

  {
    // Uncompressed gradient averaging against dense AMSGrad.
    const std::size_t d = 30;
    const std::size_t n = 3;
    HyperParams hp;
    hp.alpha = 0.05;
    hp.horizon = 100;
    hp.n_workers = n;
    ProtocolConfig cfg;
    cfg.k = d;
    cfg.p_factor = 1;
    cfg.sketch = {3, 16, seed, d};
    const auto x0 = gaussian_vector(d, rng);
    GAState ga = GAState::initial(x0, n, hp.epsilon);
    DenseAmsgradState dense = DenseAmsgradState::initial(x0, hp.epsilon, false);
    double worst = 0.0;
    for (std::int64_t t = 1; t <= hp.horizon; ++t) {
      std::vector<std::vector<double>> grads(n);
      for (auto& g : grads) g = gaussian_vector(d, rng);
      ga_step(ga, grads, hp, cfg, t);
      dense_amsgrad_step(dense, grads, hp, t);
      for (std::size_t j = 0; j < d; ++j) {
        worst = std::max(worst, std::fabs(ga.server.x[j] - dense.x[j]));
      }
    }
    out.push_back(at_most(s, "ga_matches_dense_amsgrad", worst, 1e-12,
                          "max |x_ga - x_dense| over 100 steps with k = d"));
  }

  // Compressed runs of both variants with invariant tracking.
  {
    const std::size_t d = 200;
    const std::size_t n = 4;
    HyperParams hp;
    hp.alpha = 0.1;
    hp.horizon = 200;
    hp.n_workers = n;
    ProtocolConfig cfg;
    cfg.k = 20;
    cfg.p_factor = 4;
    cfg.sketch = {5, 100, seed, d};
    const auto x0 = gaussian_vector(d, rng);

    PAState pa = PAState::initial(x0, n, hp.epsilon);
    GAState ga = GAState::initial(x0, n, hp.epsilon);
    double pa_gap = 0.0;
    double ga_gap = 0.0;
    std::size_t monotone_breaks = 0;
    std::size_t nonzero_errors = 0;
    try {
      for (std::int64_t t = 1; t <= hp.horizon; ++t) {
        std::vector<std::vector<double>> pa_grads(n);
        std::vector<std::vector<double>> ga_grads(n);
        for (std::size_t i = 0; i < n; ++i) {
          // Gradient of 0.5 ||x||^2 plus noise.
          const auto noise = gaussian_vector(d, rng, 0.3);
          pa_grads[i].resize(d);
          ga_grads[i].resize(d);
          for (std::size_t j = 0; j < d; ++j) {
            pa_grads[i][j] = pa.x[j] + noise[j];
            ga_grads[i][j] = ga.server.x[j] + noise[j];
          }
        }
        std::vector<std::vector<double>> pa_vhat;
        for (const auto& w : pa.workers) pa_vhat.push_back(w.v_hat);
        const std::vector<double> ga_vhat = ga.server.v_hat;

        pa_gap = std::max(pa_gap, pa_step(pa, pa_grads, hp, cfg, t).shadow_gap);
        ga_gap = std::max(ga_gap, ga_step(ga, ga_grads, hp, cfg, t).shadow_gap);

        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < d; ++j) {
            if (pa.workers[i].v_hat[j] < pa_vhat[i][j]) ++monotone_breaks;
          }
        }
        for (std::size_t j = 0; j < d; ++j) {
          if (ga.server.v_hat[j] < ga_vhat[j] || ga.server.v_hat[j] < hp.epsilon) {
            ++monotone_breaks;
          }
        }
        for (const auto& w : ga.workers) {
          for (std::size_t j : ga.server.last_indices) {
            if (w.e[j] != 0.0) ++nonzero_errors;
          }
        }
      }
    } catch (const InvariantViolation&) {
      pa_gap = ga_gap = std::numeric_limits<double>::infinity();
    }
    out.push_back(at_most(s, "pa_shadow_identity", pa_gap, 1e-9,
                          "max |x - x~ - alpha mean(e)| over 200 steps, k/d = 0.1"));
    out.push_back(at_most(s, "ga_shadow_identity", ga_gap, 1e-9,
                          "max |x - x~ - alpha v_hat^-1/2 mean(e)| over 200 steps, k/d = 0.1"));
    out.push_back(at_most(s, "v_hat_monotone", static_cast<double>(monotone_breaks), 0.0,
                          "coordinates where v_hat decreased or fell below epsilon"));
    out.push_back(at_most(s, "ga_error_orthogonal_to_support",
                          static_cast<double>(nonzero_errors), 0.0,
                          "nonzero error entries on the latest index set"));
  }

  {
    // Two identical runs must be bitwise identical.
    const std::size_t d = 50;
    HyperParams hp;
    hp.alpha = 0.1;
    hp.horizon = 50;
    hp.n_workers = 2;
    ProtocolConfig cfg;
    cfg.k = 5;
    cfg.p_factor = 2;
    cfg.sketch = {5, 40, seed, d};
    std::vector<double> finals[2];
    for (auto& final_x : finals) {
      std::mt19937_64 local(seed);
      GAState ga = GAState::initial(gaussian_vector(d, local), 2, hp.epsilon);
      for (std::int64_t t = 1; t <= hp.horizon; ++t) {
        std::vector<std::vector<double>> grads{gaussian_vector(d, local),
                                               gaussian_vector(d, local)};
        ga_step(ga, grads, hp, cfg, t);
      }
      final_x = ga.server.x;
    }
    out.push_back(at_least(s, "determinism", finals[0] == finals[1] ? 1.0 : 0.0, 1.0,
                           "bitwise identical trajectories from identical seeds"));
  }
}

}  // namespace

double chi_square_quantile(double dof, double z) {
  const double a = 2.0 / (9.0 * dof);
  const double base = 1.0 - a + z * std::sqrt(a);
  return dof * base * base * base;
}

std::vector<double> planted_vector(std::size_t dim, std::size_t heavy, double magnitude,
                                   std::mt19937_64& rng) {
  if (heavy > dim) throw ArgumentError("planted_vector: more heavy coordinates than dim");
  std::vector<double> v = gaussian_vector(dim, rng);
  std::vector<std::size_t> ids(dim);
  std::iota(ids.begin(), ids.end(), 0);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t h = 0; h < heavy; ++h) {
    std::uniform_int_distribution<std::size_t> pick(h, dim - 1);
    std::swap(ids[h], ids[pick(rng)]);
    v[ids[h]] = coin(rng) ? magnitude : -magnitude;
  }
  return v;
}

std::vector<PropertyResult> verify_suite(std::string_view suite, std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const bool all = suite == "all";
  if (!all && suite != "sketch" && suite != "compressor" && suite != "optimizer") {
    throw ArgumentError("unknown verify suite '" + std::string(suite) +
                        "' (expected sketch, compressor, optimizer or all)");
  }
  if (all || suite == "sketch") sketch_suite(seed, out);
  if (all || suite == "compressor") compressor_suite(seed, out);
  if (all || suite == "optimizer") optimizer_suite(seed, out);
  return out;
}

std::string format_result(const PropertyResult& r) {
  const char* tag = r.informational ? "INFO" : (r.passed ? "PASS" : "FAIL");
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%s %s/%s measured=%.6g bound=%.6g  %s", tag, r.suite.c_str(),
                r.name.c_str(), r.measured, r.bound, r.detail.c_str());
  return buf;
}

}  // namespace sketchadam
