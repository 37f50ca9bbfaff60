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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sketchadam/errors.hpp"
#include "sketchadam/optimizers.hpp"
#include "test_util.hpp"

namespace sketchadam {
namespace {

using testing::gaussian;

ProtocolConfig protocol(std::size_t k, std::size_t p, std::size_t rows, std::size_t cols,
                        std::size_t dim, std::uint64_t seed = 1) {
  ProtocolConfig cfg;
  cfg.k = k;
  cfg.p_factor = p;
  cfg.sketch = {rows, cols, seed, dim};
  return cfg;
}

HyperParams hyper(double alpha, double epsilon, std::int64_t horizon, std::size_t n) {
  HyperParams h;
  h.alpha = alpha;
  h.epsilon = epsilon;
  h.horizon = horizon;
  h.n_workers = n;
  return h;
}

std::vector<std::vector<double>> worker_grads(std::size_t n, std::size_t dim,
                                              std::mt19937_64& rng) {
  std::vector<std::vector<double>> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back(gaussian(dim, rng));
  return g;
}

TEST(StepSizeTest, HandValues) {
  EXPECT_EQ(step_size(hyper(1.0, 1e-8, 3, 1), Schedule::kParameterAveraging), 0.5);
  EXPECT_EQ(step_size(hyper(1.0, 1e-8, 3, 1), Schedule::kGradientAveraging), 0.5);
  EXPECT_NEAR(step_size(hyper(0.01, 1e-8, 99, 4), Schedule::kGradientAveraging),
              0.01 / std::sqrt(25.75), 1e-15);
  EXPECT_NEAR(step_size(hyper(0.01, 1e-8, 99, 4), Schedule::kGradientAveraging), 0.0019706,
              1e-7);
  EXPECT_EQ(error_rescale(hyper(0.1, 1e-8, 10, 2), Schedule::kGradientAveraging, 1), 1.0);
  EXPECT_EQ(error_rescale(hyper(0.1, 1e-8, 10, 2), Schedule::kGradientAveraging, 7), 1.0);
}

TEST(HyperParamsTest, Validation) {
  EXPECT_NO_THROW(hyper(0.1, 1e-8, 0, 1).validate());
  EXPECT_THROW(hyper(0.0, 1e-8, 10, 1).validate(), ArgumentError);
  EXPECT_THROW(hyper(0.1, 0.0, 10, 1).validate(), ArgumentError);
  EXPECT_THROW(hyper(0.1, 1e-8, -1, 1).validate(), ArgumentError);
  EXPECT_THROW(hyper(0.1, 1e-8, 10, 0).validate(), ArgumentError);
  HyperParams h = hyper(0.1, 1e-8, 10, 1);
  h.beta1 = 1.0;
  EXPECT_THROW(h.validate(), ArgumentError);
  h.beta1 = 0.9;
  h.beta2 = -0.1;
  EXPECT_THROW(h.validate(), ArgumentError);
}

TEST(PAStepTest, SingleCoordinateHandOracle) {
  const HyperParams h = hyper(1.0, 1e-8, 3, 1);
  PAState s = PAState::initial({0.0}, 1, h.epsilon);
  const std::vector<std::vector<double>> g{{1.0}};
  pa_step(s, g, h, protocol(1, 1, 3, 4, 1), 1);
  EXPECT_NEAR(s.workers[0].m[0], 0.1, 1e-15);
  EXPECT_NEAR(s.workers[0].v[0], 0.001 + 0.999e-8, 1e-15);
  // v starts at epsilon, so v_1 carries beta2 * epsilon on top of 0.001;
  // dropping that term gives the rounded value 3.16227766.
  const double delta = 0.1 / std::sqrt(0.001 + 0.999e-8);
  EXPECT_NEAR(delta, 3.16227766, 2e-5);
  EXPECT_NEAR(s.x[0], -0.5 * delta, 1e-12);
  EXPECT_EQ(s.workers[0].e[0], 0.0);
}

TEST(PAStepTest, ZeroGradientIsNoOp) {
  const HyperParams h = hyper(0.1, 1e-6, 10, 3);
  const std::vector<double> x0{1.0, -2.0, 0.5, 4.0};
  PAState s = PAState::initial(x0, 3, h.epsilon);
  const std::vector<std::vector<double>> g(3, std::vector<double>(4, 0.0));
  const auto diag = pa_step(s, g, h, protocol(2, 2, 3, 8, 4), 1);
  EXPECT_EQ(s.x, x0);
  for (const auto& w : s.workers) {
    EXPECT_EQ(w.m, std::vector<double>(4, 0.0));
    EXPECT_EQ(w.e, std::vector<double>(4, 0.0));
  }
  EXPECT_EQ(diag.shadow_gap, 0.0);
}

TEST(PAStepTest, IdenticalWorkersStayIdentical) {
  std::mt19937_64 rng(11);
  const std::size_t d = 50;
  const HyperParams h = hyper(0.1, 1e-6, 20, 2);
  PAState s = PAState::initial(std::vector<double>(d, 0.0), 2, h.epsilon);
  const ProtocolConfig cfg = protocol(5, 3, 5, 20, d);
  for (std::int64_t t = 1; t <= 20; ++t) {
    const auto g = gaussian(d, rng);
    const std::vector<std::vector<double>> grads{g, g};
    pa_step(s, grads, h, cfg, t);
    ASSERT_EQ(s.workers[0].e, s.workers[1].e);
    ASSERT_EQ(s.workers[0].m, s.workers[1].m);
    ASSERT_EQ(s.workers[0].v_hat, s.workers[1].v_hat);
  }
}

TEST(PAStepTest, ShadowIdentityAndMonotoneVhat) {
  std::mt19937_64 rng(12);
  const std::size_t d = 80;
  const std::size_t n = 4;
  const HyperParams h = hyper(0.05, 1e-4, 100, n);
  const ProtocolConfig cfg = protocol(6, 3, 5, 24, d, 9);
  PAState s = PAState::initial(std::vector<double>(d, 0.0), n, h.epsilon);
  auto prev = s.workers;
  for (std::int64_t t = 1; t <= 100; ++t) {
    const auto diag = pa_step(s, worker_grads(n, d, rng), h, cfg, t);
    ASSERT_LE(diag.shadow_gap, 1e-9);
    ASSERT_EQ(diag.upstream_scalars, 5 * 24 + 3 * 6);
    ASSERT_EQ(diag.downstream_scalars, 6);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) ASSERT_GE(s.workers[i].v_hat[j], prev[i].v_hat[j]);
    }
    prev = s.workers;
  }
}

TEST(PAStepTest, Errors) {
  const HyperParams h = hyper(0.1, 1e-6, 10, 2);
  PAState s = PAState::initial(std::vector<double>(4, 0.0), 2, h.epsilon);
  const ProtocolConfig cfg = protocol(2, 2, 3, 8, 4);
  EXPECT_THROW(pa_step(s, std::vector<std::vector<double>>(1, std::vector<double>(4)), h, cfg, 1),
               ArgumentError);
  EXPECT_THROW(pa_step(s, std::vector<std::vector<double>>(2, std::vector<double>(3)), h, cfg, 1),
               ArgumentError);
  EXPECT_THROW(pa_step(s, std::vector<std::vector<double>>(2, std::vector<double>(4)), h,
                       protocol(2, 2, 3, 8, 5), 1),
               ArgumentError);
  std::vector<std::vector<double>> bad(2, std::vector<double>(4, 0.0));
  bad[1][2] = std::nan("");
  try {
    pa_step(s, bad, h, cfg, 7);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_EQ(e.iteration(), 7);
  }
}

TEST(GAStepTest, FirstStepUsesEmptyIndexSet) {
  const HyperParams h = hyper(1.0, 1e-8, 3, 1);
  GAState s = GAState::initial({0.0}, 1, h.epsilon);
  const std::vector<std::vector<double>> g{{1.0}};
  const auto diag = ga_step(s, g, h, protocol(1, 1, 3, 4, 1), 1);
  EXPECT_NEAR(s.server.v[0], 0.999e-8, 1e-22);
  EXPECT_EQ(s.server.v_hat[0], 1e-8);
  EXPECT_NEAR(s.workers[0].m[0], 0.1, 1e-15);
  EXPECT_NEAR(s.server.x[0], -0.5 * 0.1 / std::sqrt(1e-8), 1e-9);
  EXPECT_EQ(s.server.last_indices, std::vector<std::size_t>{0});
  EXPECT_EQ(diag.upstream_scalars, 3 * 4 + 1 + 1);

  // Second step now feeds the server second moment from I_1 = {0}.
  ga_step(s, g, h, protocol(1, 1, 3, 4, 1), 2);
  EXPECT_NEAR(s.server.v[0], 0.999 * 0.999e-8 + 0.001, 1e-15);
}

TEST(GAStepTest, NoCompressionMatchesDenseAmsgrad) {
  std::mt19937_64 rng(13);
  const std::size_t d = 30;
  const std::size_t n = 3;
  const HyperParams h = hyper(0.05, 1e-3, 100, n);
  GAState ga = GAState::initial(std::vector<double>(d, 0.5), n, h.epsilon);
  DenseAmsgradState dense = DenseAmsgradState::initial(std::vector<double>(d, 0.5), h.epsilon,
                                                       /*variance_from_first_step=*/false);
  const ProtocolConfig cfg = protocol(d, 1, 3, 8, d);
  double worst = 0.0;
  for (std::int64_t t = 1; t <= 100; ++t) {
    const auto g = worker_grads(n, d, rng);
    ga_step(ga, g, h, cfg, t);
    dense_amsgrad_step(dense, g, h, t);
    worst = std::max(worst, testing::max_abs_diff(ga.server.x, dense.x));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(GAStepTest, ShadowIdentityAndErrorSupport) {
  std::mt19937_64 rng(14);
  const std::size_t d = 120;
  const std::size_t n = 4;
  const HyperParams h = hyper(0.1, 1e-2, 100, n);
  const ProtocolConfig cfg = protocol(8, 4, 5, 30, d, 21);
  GAState s = GAState::initial(std::vector<double>(d, 0.0), n, h.epsilon);
  std::vector<double> prev_v_hat = s.server.v_hat;
  for (std::int64_t t = 1; t <= 100; ++t) {
    const auto diag = ga_step(s, worker_grads(n, d, rng), h, cfg, t);
    ASSERT_LE(diag.shadow_gap, 1e-9);
    ASSERT_EQ(diag.upstream_scalars, 5 * 30 + 4 * 8 + 8);
    ASSERT_EQ(diag.downstream_scalars, 8);
    ASSERT_EQ(s.server.last_indices.size(), 8u);
    for (const auto& w : s.workers) {
      for (std::size_t j : s.server.last_indices) ASSERT_EQ(w.e[j], 0.0);
    }
    for (std::size_t j = 0; j < d; ++j) ASSERT_GE(s.server.v_hat[j], prev_v_hat[j]);
    prev_v_hat = s.server.v_hat;
  }
}

TEST(GAStepTest, LiteralMixedModeRunsWithoutEnforcement) {
  std::mt19937_64 rng(15);
  const std::size_t d = 40;
  const HyperParams h = hyper(0.1, 1e-2, 20, 2);
  GAState s = GAState::initial(std::vector<double>(d, 0.0), 2, h.epsilon, true,
                               GaErrorMode::kLiteralMixed);
  for (std::int64_t t = 1; t <= 20; ++t) {
    EXPECT_NO_THROW(ga_step(s, worker_grads(2, d, rng), h, protocol(4, 2, 3, 16, d), t));
  }
}

TEST(DenseAmsgradTest, HandOracleMatchesPA) {
  const HyperParams h = hyper(1.0, 1e-8, 3, 1);
  DenseAmsgradState s = DenseAmsgradState::initial({0.0}, h.epsilon, true);
  dense_amsgrad_step(s, std::vector<std::vector<double>>{{1.0}}, h, 1);
  PAState pa = PAState::initial({0.0}, 1, h.epsilon);
  pa_step(pa, std::vector<std::vector<double>>{{1.0}}, h, protocol(1, 1, 3, 4, 1), 1);
  EXPECT_NEAR(s.x[0], -0.5 * 0.1 / std::sqrt(0.001 + 0.999e-8), 1e-12);
  EXPECT_NEAR(s.x[0], pa.x[0], 1e-15);
}

TEST(DenseAmsgradTest, ZeroGradientKeepsX) {
  const HyperParams h = hyper(0.1, 1e-6, 10, 2);
  DenseAmsgradState s = DenseAmsgradState::initial({1.0, 2.0}, h.epsilon);
  for (std::int64_t t = 1; t <= 10; ++t) {
    dense_amsgrad_step(s, std::vector<std::vector<double>>(2, {0.0, 0.0}), h, t);
  }
  EXPECT_EQ(s.x, (std::vector<double>{1.0, 2.0}));
}

TEST(SketchedSgdTest, NoMomentumNoCompressionIsSgd) {
  std::mt19937_64 rng(16);
  const std::size_t d = 20;
  const std::size_t n = 3;
  HyperParams h = hyper(0.2, 1e-6, 50, n);
  h.beta1 = 0.0;
  SketchedSgdState s = SketchedSgdState::initial(std::vector<double>(d, 1.0), n);
  std::vector<double> x(d, 1.0);
  const double alpha_t = 0.2 / std::sqrt(51.0);
  for (std::int64_t t = 1; t <= 50; ++t) {
    const auto g = worker_grads(n, d, rng);
    sketched_sgd_step(s, g, h, protocol(d, 1, 3, 8, d), t);
    const auto gm = testing::mean(g);
    for (std::size_t j = 0; j < d; ++j) x[j] -= alpha_t * gm[j];
  }
  EXPECT_LE(testing::max_abs_diff(s.x, x), 1e-12);
}

TEST(SketchedSgdTest, HandCaseWithErrorFeedback) {
  // d=3, k=1, one worker, beta1=0.5: the largest coordinate ships, the rest
  // accumulate into the error and ship later.
  HyperParams h = hyper(1.0, 1e-6, 3, 1);  // alpha_t = 0.5
  h.beta1 = 0.5;
  SketchedSgdState s = SketchedSgdState::initial({0.0, 0.0, 0.0}, 1);
  const ProtocolConfig cfg = protocol(1, 3, 3, 64, 3);
  const std::vector<std::vector<double>> g{{3.0, 2.0, -1.0}};
  sketched_sgd_step(s, g, h, cfg, 1);
  EXPECT_EQ(s.x, (std::vector<double>{-1.5, 0.0, 0.0}));
  EXPECT_EQ(s.workers[0].e, (std::vector<double>{0.0, 2.0, -1.0}));
  // u = [4.5, 3, -1.5]; payload = [4.5, 5, -2.5]; coordinate 1 ships.
  sketched_sgd_step(s, g, h, cfg, 2);
  EXPECT_EQ(s.workers[0].u, (std::vector<double>{4.5, 3.0, -1.5}));
  EXPECT_EQ(s.x, (std::vector<double>{-1.5, -2.5, 0.0}));
  EXPECT_EQ(s.workers[0].e, (std::vector<double>{4.5, 0.0, -2.5}));
}

TEST(SketchedSgdTest, ZeroInputIsNoOp) {
  SketchedSgdState s = SketchedSgdState::initial({1.0, -1.0}, 2);
  sketched_sgd_step(s, std::vector<std::vector<double>>(2, {0.0, 0.0}), hyper(0.1, 1e-6, 5, 2),
                    protocol(1, 2, 3, 8, 2), 1);
  EXPECT_EQ(s.x, (std::vector<double>{1.0, -1.0}));
}

TEST(DenseSgdTest, Step) {
  std::vector<double> x{1.0, 1.0};
  dense_sgd_step(x, std::vector<std::vector<double>>{{2.0, 0.0}, {0.0, 4.0}},
                 hyper(1.0, 1e-6, 3, 2), 1);
  EXPECT_EQ(x, (std::vector<double>{0.5, 0.0}));
}

TEST(OptimizerFactoryTest, NamesRoundTrip) {
  for (OptimizerKind k : {OptimizerKind::kPA, OptimizerKind::kGA, OptimizerKind::kDenseAmsgrad,
                          OptimizerKind::kSketchedSgd, OptimizerKind::kDenseSgd}) {
    EXPECT_EQ(optimizer_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(optimizer_kind_from_string("adam"), ArgumentError);
  EXPECT_TRUE(uses_protocol(OptimizerKind::kGA));
  EXPECT_FALSE(uses_protocol(OptimizerKind::kDenseSgd));
}

TEST(OptimizerFactoryTest, DeterministicTrajectories) {
  const std::size_t d = 60;
  const std::size_t n = 3;
  const HyperParams h = hyper(0.1, 1e-2, 30, n);
  const ProtocolConfig cfg = protocol(6, 3, 5, 20, d, 5);
  for (OptimizerKind kind : {OptimizerKind::kPA, OptimizerKind::kGA, OptimizerKind::kDenseAmsgrad,
                             OptimizerKind::kSketchedSgd, OptimizerKind::kDenseSgd}) {
    std::vector<std::vector<double>> xs;
    for (int rep = 0; rep < 2; ++rep) {
      std::mt19937_64 rng(17);
      auto opt = make_optimizer(kind, std::vector<double>(d, 0.0), h, cfg);
      for (std::int64_t t = 1; t <= 30; ++t) opt->step(worker_grads(n, d, rng), t);
      xs.emplace_back(opt->x().begin(), opt->x().end());
    }
    EXPECT_EQ(xs[0], xs[1]) << to_string(kind);
  }
}

}  // namespace
}  // namespace sketchadam
