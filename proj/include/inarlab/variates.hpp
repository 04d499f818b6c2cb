// Copyright 2026 The inarlab Authors
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

#pragma once

// Exact variate generators on top of RngStream.
//
// Counts are carried as integer-valued doubles so that the aggregation kernels
// never overflow when a thinning coefficient sits extremely close to one. All
// draws are exact for values below 2^53; above that the state is integer only
// to double precision.

#include <array>
#include <vector>

#include "inarlab/rng.hpp"

namespace inarlab::variates {

double standard_normal(RngStream& rng) noexcept;
double exponential(RngStream& rng) noexcept;

// Gamma(shape, 1). shape > 0.
double gamma(double shape, RngStream& rng) noexcept;

// Beta(a, b) drawn as a ratio of gammas; `complement` is 1 - value computed
// without cancellation.
struct BetaDraw {
  double value;
  double complement;
};
BetaDraw beta(double a, double b, RngStream& rng) noexcept;

// log P(K = k) for K ~ Poisson(mean), accurate for large k and mean.
double poisson_log_pmf(double k, double mean) noexcept;

// Poisson sampler with the per-mean constants precomputed. Inversion for
// mean < 10, transformed rejection with squeeze (PTRS) above.
class PoissonSampler {
 public:
  explicit PoissonSampler(double mean);

  double mean() const noexcept { return mean_; }
  double operator()(RngStream& rng) const noexcept;

  bool uses_inversion() const noexcept { return use_inversion_; }
  // Inversion of a supplied uniform; only valid when uses_inversion().
  double invert_uniform(double u) const noexcept;

 private:
  double invert(RngStream& rng) const noexcept;
  double ptrs(RngStream& rng) const noexcept;

  double mean_;
  bool use_inversion_;
  // inversion
  std::vector<double> cdf_;
  // PTRS
  double b_ = 0, a_ = 0, inv_alpha_ = 0, v_r_ = 0, log_inv_alpha_ = 0;
};

double poisson(double mean, RngStream& rng);

// Binomial(n, p) where q = 1 - p is supplied separately so that p close to one
// loses no precision. n is a nonnegative integer-valued double.
double binomial(double n, double p, double q, RngStream& rng) noexcept;

// Survivors of binomial thinning with a fixed coefficient. Keeps the
// constants that depend only on the coefficient, so that the per-step cost is one or two uniforms in the common case.
class Thinner {
 public:
  Thinner(double alpha, double complement) noexcept;

  double operator()(double x, RngStream& rng) const noexcept;

  // Same law, but when the inversion branch is taken the uniform left over
  // inside the selected cell, rescaled to (0, 1], is written to `residual`.
  // It is independent of the result. Set to a negative value when no usable
  // residual is available.
  double thin_with_residual(double x, RngStream& rng,
                            double& residual) const noexcept;

 private:
  double small_side(double x, RngStream& rng, double& residual) const noexcept;

  bool flip_;   // true when the small side is the complement
  double p_;    // min(alpha, 1 - alpha)
  double q_;    // max(alpha, 1 - alpha)
  double log_q_;
  double ratio_;  // p / q
  static constexpr int kTable = 64;
  static constexpr std::array<double, kTable> inv_ = [] {
    std::array<double, kTable> t{};
    for (int k = 1; k < kTable; ++k) t[k] = 1.0 / k;
    return t;
  }();
};

}  // namespace inarlab::variates
