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
#include <optional>
#include <span>
#include <vector>

namespace sketchadam {

/// Finite-sum objective f(x) = (1/N) sum_s F(x; s). Batches are lists of
/// sample ids in [0, n_samples); the loss and gradient of a batch are means
/// over its entries (repeats count).
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::size_t dim() const = 0;
  virtual std::size_t n_samples() const = 0;
  virtual double loss(std::span<const double> x, std::span<const std::size_t> batch) const = 0;
  virtual std::vector<double> gradient(std::span<const double> x,
                                       std::span<const std::size_t> batch) const = 0;

  /// Objective and gradient over all samples.
  virtual double full_loss(std::span<const double> x) const;
  virtual std::vector<double> full_gradient(std::span<const double> x) const;

  /// Class label of every sample, or empty for unlabeled problems.
  virtual std::span<const int> labels() const { return {}; }
  virtual std::size_t n_classes() const { return 0; }

  virtual std::optional<double> optimum_value() const { return std::nullopt; }

  std::vector<double> initial_point() const { return std::vector<double>(dim(), 0.0); }

 protected:
  std::vector<std::size_t> all_samples() const;
};

struct QuadraticSpec {
  std::size_t dim = 100;
  double condition_number = 10.0;
  double noise_std = 1.0;
  std::size_t n_samples = 1024;
  std::uint64_t seed = 0;

  friend bool operator==(const QuadraticSpec&, const QuadraticSpec&) = default;
};

/// f(x) = 1/2 (x - x*)^T A (x - x*), A diagonal with eigenvalues log-spaced
/// in [1, condition_number]. Sample s perturbs the gradient by xi_s, where
/// the xi_s are Gaussian with the given standard deviation and centered so
/// that they average to zero over the data set: the full-batch objective is
/// exactly the quadratic and its optimum value is 0.
class QuadraticProblem final : public Problem {
 public:
  explicit QuadraticProblem(const QuadraticSpec& spec);

  std::size_t dim() const override { return spec_.dim; }
  std::size_t n_samples() const override { return spec_.n_samples; }
  double loss(std::span<const double> x, std::span<const std::size_t> batch) const override;
  std::vector<double> gradient(std::span<const double> x,
                               std::span<const std::size_t> batch) const override;
  double full_loss(std::span<const double> x) const override;
  std::vector<double> full_gradient(std::span<const double> x) const override;
  std::optional<double> optimum_value() const override { return 0.0; }

  std::span<const double> curvature() const { return curvature_; }
  std::span<const double> minimizer() const { return minimizer_; }

 private:
  // Mean of the centered noise vectors of a batch (zero when noise_std = 0).
  std::vector<double> batch_noise(std::span<const std::size_t> batch) const;

  QuadraticSpec spec_;
  std::vector<double> curvature_;
  std::vector<double> minimizer_;
  std::vector<double> noise_;  // n_samples x dim, row-major; empty when noise-free
};

std::unique_ptr<QuadraticProblem> make_quadratic(std::size_t dim, double condition_number,
                                                 std::uint64_t seed, double noise_std = 1.0,
                                                 std::size_t n_samples = 1024);

struct LogRegSpec {
  std::size_t n_samples = 2000;
  std::size_t features = 10;
  std::size_t n_classes = 5;
  double separation = 1.0;  // std of the class means
  double l2 = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const LogRegSpec&, const LogRegSpec&) = default;
};

/// Multinomial logistic regression (softmax cross-entropy) on a Gaussian
/// mixture. Parameters are an n_classes x features weight matrix in
/// row-major order, so dim() = n_classes * features. Labels are balanced:
/// sample s belongs to class s mod n_classes.
class LogisticRegressionProblem final : public Problem {
 public:
  explicit LogisticRegressionProblem(const LogRegSpec& spec);

  std::size_t dim() const override { return spec_.n_classes * spec_.features; }
  std::size_t n_samples() const override { return spec_.n_samples; }
  double loss(std::span<const double> x, std::span<const std::size_t> batch) const override;
  std::vector<double> gradient(std::span<const double> x,
                               std::span<const std::size_t> batch) const override;
  std::span<const int> labels() const override { return labels_; }
  std::size_t n_classes() const override { return spec_.n_classes; }

  std::span<const double> sample(std::size_t s) const {
    return std::span<const double>(features_).subspan(s * spec_.features, spec_.features);
  }

 private:
  LogRegSpec spec_;
  std::vector<double> features_;  // n_samples x features
  std::vector<int> labels_;
};

std::unique_ptr<LogisticRegressionProblem> make_logreg(std::size_t n_samples,
                                                       std::size_t features,
                                                       std::size_t n_classes, std::uint64_t seed,
                                                       double separation = 1.0, double l2 = 0.0);

}  // namespace sketchadam
