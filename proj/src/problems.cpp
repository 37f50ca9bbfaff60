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

#include "sketchadam/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "sketchadam/errors.hpp"

namespace sketchadam {
namespace {

void check_x(std::span<const double> x, std::size_t dim) {
  if (x.size() != dim) {
    throw ArgumentError("parameter vector has length " + std::to_string(x.size()) +
                        ", expected " + std::to_string(dim));
  }
}

void check_batch(std::span<const std::size_t> batch, std::size_t n_samples) {
  if (batch.empty()) throw ArgumentError("empty batch");
  for (std::size_t s : batch) {
    if (s >= n_samples) throw ArgumentError("sample id " + std::to_string(s) + " out of range");
  }
}

}  // namespace

std::vector<std::size_t> Problem::all_samples() const {
  std::vector<std::size_t> ids(n_samples());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return ids;
}

double Problem::full_loss(std::span<const double> x) const {
  const auto ids = all_samples();
  return loss(x, ids);
}

std::vector<double> Problem::full_gradient(std::span<const double> x) const {
  const auto ids = all_samples();
  return gradient(x, ids);
}

// ---------------------------------------------------------------------------

QuadraticProblem::QuadraticProblem(const QuadraticSpec& spec) : spec_(spec) {
  if (spec.dim < 1) throw ArgumentError("quadratic: dim must be >= 1");
  if (!(spec.condition_number >= 1.0) || !std::isfinite(spec.condition_number)) {
    throw ArgumentError("quadratic: condition_number must be >= 1");
  }
  if (!(spec.noise_std >= 0.0) || !std::isfinite(spec.noise_std)) {
    throw ArgumentError("quadratic: noise_std must be >= 0");
  }
  if (spec.n_samples < 1) throw ArgumentError("quadratic: n_samples must be >= 1");

  const std::size_t d = spec.dim;
  curvature_.resize(d);
  const double log_cond = std::log(spec.condition_number);
  for (std::size_t j = 0; j < d; ++j) {
    const double frac = d == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(d - 1);
    curvature_[j] = spec.condition_number == 1.0 ? 1.0 : std::exp(frac * log_cond);
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  minimizer_.resize(d);
  for (double& v : minimizer_) v = normal(rng);

  if (spec.noise_std > 0.0) {
    noise_.resize(spec.n_samples * d);
    for (double& v : noise_) v = spec.noise_std * normal(rng);
    std::vector<double> mean(d, 0.0);
    for (std::size_t s = 0; s < spec.n_samples; ++s) {
      for (std::size_t j = 0; j < d; ++j) mean[j] += noise_[s * d + j];
    }
    for (double& m : mean) m /= static_cast<double>(spec.n_samples);
    for (std::size_t s = 0; s < spec.n_samples; ++s) {
      for (std::size_t j = 0; j < d; ++j) noise_[s * d + j] -= mean[j];
    }
  }
}

std::vector<double> QuadraticProblem::batch_noise(std::span<const std::size_t> batch) const {
  const std::size_t d = spec_.dim;
  std::vector<double> out(d, 0.0);
  if (noise_.empty()) return out;
  for (std::size_t s : batch) {
    for (std::size_t j = 0; j < d; ++j) out[j] += noise_[s * d + j];
  }
  for (double& v : out) v /= static_cast<double>(batch.size());
  return out;
}

double QuadraticProblem::full_loss(std::span<const double> x) const {
  check_x(x, spec_.dim);
  double f = 0.0;
  for (std::size_t j = 0; j < spec_.dim; ++j) {
    const double r = x[j] - minimizer_[j];
    f += 0.5 * curvature_[j] * r * r;
  }
  return f;
}

std::vector<double> QuadraticProblem::full_gradient(std::span<const double> x) const {
  check_x(x, spec_.dim);
  std::vector<double> g(spec_.dim);
  for (std::size_t j = 0; j < spec_.dim; ++j) g[j] = curvature_[j] * (x[j] - minimizer_[j]);
  return g;
}

double QuadraticProblem::loss(std::span<const double> x,
                              std::span<const std::size_t> batch) const {
  check_batch(batch, spec_.n_samples);
  const std::vector<double> xi = batch_noise(batch);
  double f = full_loss(x);
  for (std::size_t j = 0; j < spec_.dim; ++j) f += xi[j] * x[j];
  return f;
}

std::vector<double> QuadraticProblem::gradient(std::span<const double> x,
                                               std::span<const std::size_t> batch) const {
  check_batch(batch, spec_.n_samples);
  std::vector<double> g = full_gradient(x);
  const std::vector<double> xi = batch_noise(batch);
  for (std::size_t j = 0; j < spec_.dim; ++j) g[j] += xi[j];
  return g;
}

std::unique_ptr<QuadraticProblem> make_quadratic(std::size_t dim, double condition_number,
                                                 std::uint64_t seed, double noise_std,
                                                 std::size_t n_samples) {
  return std::make_unique<QuadraticProblem>(
      QuadraticSpec{dim, condition_number, noise_std, n_samples, seed});
}

// ---------------------------------------------------------------------------

LogisticRegressionProblem::LogisticRegressionProblem(const LogRegSpec& spec) : spec_(spec) {
  if (spec.n_classes < 2) throw ArgumentError("logreg: n_classes must be >= 2");
  if (spec.features < 1) throw ArgumentError("logreg: features must be >= 1");
  if (spec.n_samples < 1) throw ArgumentError("logreg: n_samples must be >= 1");
  if (!(spec.separation >= 0.0) || !(spec.l2 >= 0.0)) {
    throw ArgumentError("logreg: separation and l2 must be >= 0");
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t F = spec.features;
  std::vector<double> means(spec.n_classes * F);
  for (double& m : means) m = spec.separation * normal(rng);

  features_.resize(spec.n_samples * F);
  labels_.resize(spec.n_samples);
  for (std::size_t s = 0; s < spec.n_samples; ++s) {
    const std::size_t c = s % spec.n_classes;
    labels_[s] = static_cast<int>(c);
    for (std::size_t f = 0; f < F; ++f) features_[s * F + f] = means[c * F + f] + normal(rng);
  }
}

double LogisticRegressionProblem::loss(std::span<const double> x,
                                       std::span<const std::size_t> batch) const {
  check_x(x, dim());
  check_batch(batch, spec_.n_samples);
  const std::size_t C = spec_.n_classes;
  const std::size_t F = spec_.features;
  std::vector<double> logits(C);
  double total = 0.0;
  for (std::size_t s : batch) {
    const auto a = sample(s);
    for (std::size_t c = 0; c < C; ++c) {
      logits[c] = std::inner_product(a.begin(), a.end(), x.begin() + c * F, 0.0);
    }
    const double mx = *std::max_element(logits.begin(), logits.end());
    double z = 0.0;
    for (double l : logits) z += std::exp(l - mx);
    total += mx + std::log(z) - logits[static_cast<std::size_t>(labels_[s])];
  }
  double f = total / static_cast<double>(batch.size());
  if (spec_.l2 > 0.0) {
    double sq = 0.0;
    for (double w : x) sq += w * w;
    f += 0.5 * spec_.l2 * sq;
  }
  return f;
}

std::vector<double> LogisticRegressionProblem::gradient(
    std::span<const double> x, std::span<const std::size_t> batch) const {
  check_x(x, dim());
  check_batch(batch, spec_.n_samples);
  const std::size_t C = spec_.n_classes;
  const std::size_t F = spec_.features;
  std::vector<double> g(dim(), 0.0);
  std::vector<double> prob(C);
  for (std::size_t s : batch) {
    const auto a = sample(s);
    for (std::size_t c = 0; c < C; ++c) {
      prob[c] = std::inner_product(a.begin(), a.end(), x.begin() + c * F, 0.0);
    }
    const double mx = *std::max_element(prob.begin(), prob.end());
    double z = 0.0;
    for (double& p : prob) {
      p = std::exp(p - mx);
      z += p;
    }
    for (std::size_t c = 0; c < C; ++c) {
      double coeff = prob[c] / z;
      if (static_cast<int>(c) == labels_[s]) coeff -= 1.0;
      for (std::size_t f = 0; f < F; ++f) g[c * F + f] += coeff * a[f];
    }
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = g[j] * inv + spec_.l2 * x[j];
  return g;
}

std::unique_ptr<LogisticRegressionProblem> make_logreg(std::size_t n_samples,
                                                       std::size_t features,
                                                       std::size_t n_classes, std::uint64_t seed,
                                                       double separation, double l2) {
  return std::make_unique<LogisticRegressionProblem>(
      LogRegSpec{n_samples, features, n_classes, separation, l2, seed});
}

}  // namespace sketchadam
