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

// Limit objects of the aggregated processes: samplers, characteristic
// functions and covariances.

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "inarlab/aggregation.hpp"
#include "inarlab/model.hpp"
#include "inarlab/rng.hpp"

namespace inarlab {

// Covariance of fractional Brownian motion with Hurst index 1 - beta/2.
double fbm_cov(double beta, double t1, double t2);

inline constexpr std::size_t kMaxCholeskyGrid = 1000;

// Draws exact Gaussian vectors with covariance fbm_cov on a fixed grid.
class FbmSampler {
 public:
  FbmSampler(double beta, std::vector<double> t_grid);
  std::vector<double> operator()(RngStream& rng) const;
  const std::vector<double>& grid() const noexcept { return grid_; }

 private:
  double beta_;
  std::vector<double> grid_;
  std::vector<double> lower_;  // row-major Cholesky factor
};

std::vector<double> sample_fbm(double beta, const std::vector<double>& t_grid,
                               RngStream& rng);

// Stable law S_index(sigma, skew, 0) in the Samorodnitsky-Taqqu
// parameterization, CF exp(-sigma^a |theta|^a (1 - i skew sign(theta)
// tan(pi a / 2))) for a != 1. Chambers-Mallows-Stuck.
double sample_stable(double index, double skew, double sigma, RngStream& rng);

// CF exp(-scale_const |theta|^index).
double sample_stable_symmetric(double index, double scale_const, RngStream& rng);

// Laplace transform exp(-k_beta theta^{(1+beta)/2}). Kanter's method.
double sample_positive_stable(double beta, double k_beta, RngStream& rng);

class LimitLaw;

namespace limit {

struct ScaledBM {
  double sigma;
};

struct FBM {
  double beta;   // Hurst index 1 - beta/2
  double scale;  // multiplies the standard fBm
};

enum class LineKind { kSymmetricStable, kSkewedStable, kGaussian };

// A line V t with a random slope V.
struct StableLine {
  LineKind kind;
  // Symmetric: CF exp(-scale |theta|^index).
  // Skewed: CF exp(-|theta|^index omega(theta)) with omega(theta) =
  //   scale e^{-i pi sign(theta) index / 2}, index = 1 + beta.
  // Gaussian: variance = scale.
  double index;
  double scale;
};

// sqrt(Y) B_t with Y positive stable of index (1 + beta)/2.
struct SubordinatedLevy {
  double beta;
  double k_beta;
};

// (lambda/(1 - alpha) - E lambda/(1 - alpha)) t.
struct RandomSlopeMixing {
  double lambda;
  std::shared_ptr<const MixingLaw> mixing;
  double mean;
};

struct Bridge {
  std::shared_ptr<const LimitLaw> inner;
};

}  // namespace limit

class LimitLaw {
 public:
  using Variant = std::variant<limit::ScaledBM, limit::FBM, limit::StableLine,
                               limit::SubordinatedLevy, limit::RandomSlopeMixing,
                               limit::Bridge>;

  static LimitLaw scaled_bm(double sigma);
  static LimitLaw fbm(double beta, double scale);
  static LimitLaw symmetric_line(double index, double scale_const);
  static LimitLaw skewed_line(double beta, double omega_scale);
  static LimitLaw gaussian_line(double variance);
  static LimitLaw subordinated_levy(double beta, double k_beta);
  static LimitLaw random_slope(const RandomizedModel& rmodel);
  // Only Brownian, fractional Brownian and subordinated Levy limits.
  static LimitLaw bridge(const LimitLaw& inner);

  const Variant& variant() const noexcept { return v_; }
  std::string kind() const;
  std::string describe() const;
  bool is_gaussian() const noexcept;
  // The law whose log characteristic function is d times this one. Capability
  // error for random slopes.
  LimitLaw with_dispersion(double d) const;

 private:
  explicit LimitLaw(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

// Limit of the scaled statistic of a regime.
LimitLaw limit_law_for(Regime regime, const RandomizedModel& rmodel);

// CF of the marginal at time t. Capability error when there is no closed
// form (random slopes of laws with a density).
std::complex<double> limit_cf(const LimitLaw& law, double theta, double t);

// Covariance of the values at s and t for Gaussian laws; capability error
// otherwise.
double limit_cov(const LimitLaw& law, double s, double t);

// Draws paths on a fixed grid; caches factorizations.
class LimitPathSampler {
 public:
  LimitPathSampler(LimitLaw law, std::vector<double> t_grid);
  std::vector<double> operator()(RngStream& rng) const;

 private:
  std::vector<double> draw(const LimitLaw& law, RngStream& rng) const;

  LimitLaw law_;
  std::vector<double> grid_;
  std::vector<double> inner_grid_;  // grid with 1 appended for bridges
  std::unique_ptr<FbmSampler> fbm_;
};

std::vector<double> sample_limit_path(const LimitLaw& law,
                                      const std::vector<double>& t_grid,
                                      RngStream& rng);

}  // namespace inarlab
