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

// Certification of simulated aggregates against limit laws.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "inarlab/aggregation.hpp"
#include "inarlab/limit_laws.hpp"
#include "inarlab/model.hpp"

namespace inarlab {

inline constexpr long kMinReplicates = 100;

std::vector<double> default_theta_grid();

// Complex matrices are row-major over (t, theta).
struct CfReport {
  std::vector<double> theta_grid;
  std::vector<double> t_grid;
  std::vector<std::complex<double>> empirical;
  std::vector<std::complex<double>> theoretical;
  std::vector<double> se;  // sqrt((1 - |phi|^2) / R) from the empirical CF
  double max_abs_dev = 0.0;
  double max_z = 0.0;  // largest deviation in units of se
  double gate = 4.0;
  std::size_t cells = 0;
  bool pass = false;
};

// Fills the empirical part only.
CfReport empirical_cf(const SampleMatrix& samples, const std::vector<double>& t_grid,
                      const std::vector<double>& theta_grid);

using CfTarget = std::function<std::complex<double>(double theta, double t)>;

// pass iff every cell has |empirical - theoretical| <= gate * se. A cell with
// se = 0 passes only on an exact match.
CfReport compare_cf(const SampleMatrix& samples, const std::vector<double>& t_grid,
                    const std::vector<double>& theta_grid, const CfTarget& target,
                    double gate = 4.0);

struct CovPair {
  std::size_t i;
  std::size_t j;
  double s;
  double t;
};

struct CovReport {
  std::vector<CovPair> pairs;  // i <= j
  std::vector<double> empirical;
  std::vector<double> theoretical;
  std::vector<double> se;  // bootstrap
  double max_rel_dev = 0.0;
  double max_z = 0.0;
  double gate = 4.0;
  double min_eigenvalue = 0.0;  // of the empirical covariance matrix
  bool psd = false;
  bool pass = false;
};

using CovTarget = std::function<double(double s, double t)>;

struct CovOptions {
  double gate = 4.0;
  int bootstrap = 500;
  std::uint64_t seed = 1;
};

CovReport compare_cov(const SampleMatrix& samples, const std::vector<double>& t_grid,
                      const CovTarget& target, const CovOptions& options = {});

// Two-sample statistic.
double ks_distance(std::vector<double> a, std::vector<double> b);
// One-sample statistic against a continuous CDF.
double ks_distance(std::vector<double> a, const std::function<double(double)>& cdf);
// Asymptotic two-sample critical value at the given level.
double ks_critical(std::size_t n, std::size_t m, double level = 1e-3);

struct KsReport {
  double distance = 0.0;
  double critical = 0.0;
  std::size_t reference_size = 0;
  bool pass = false;
};

struct SuiteOptions {
  std::vector<long> N_ladder{200};
  std::vector<long> n_ladder{500};
  std::vector<double> t_grid{0.25, 0.5, 0.75, 1.0};
  std::vector<double> theta_grid = default_theta_grid();
  long replicates = 2000;
  // Regimes valid in either order run in this one.
  IterationOrder order = IterationOrder::kNFirst;
  double gate = 4.0;
  int bootstrap = 500;
  std::size_t ks_reference = 20000;
  std::uint64_t seed = 1;
  double step_budget = 2e11;
};

// The comparisons a regime's limit calls for, run on a sample matrix.
struct SuiteEvaluation {
  std::optional<CovReport> cov;
  std::optional<CfReport> cf;
  std::optional<KsReport> ks;
  // Bridges: every sample at t = 1 is exactly zero.
  std::optional<bool> bridge_zero;
  bool pass = false;
};

// seed drives the bootstrap and the KS reference draws.
SuiteEvaluation evaluate_against(const LimitLaw& law, const SampleMatrix& samples,
                                 const SuiteOptions& options);

struct SuiteReport {
  Regime regime;
  IterationOrder order;
  std::string target;
  long N = 0;
  long n = 0;
  long replicates = 0;
  bool converged = false;
  SuiteEvaluation evaluation;
  SampleMatrix samples;  // the scaled statistic of the evaluated cell
  // Gaussian limits: per grid point, the variance estimated from the pooled
  // squared copy sums of all replicates.
  std::vector<double> pooled_variance;
  double seconds = 0.0;
  bool pass = false;
  // "pass" or "budget-limited"; a failure at finite (N, n) is never read as
  // a refutation.
  std::string status;
};

// Runs the iterated experiment for the regime and evaluates its last cell.
SuiteReport regime_suite(const RandomizedModel& rmodel, Regime regime,
                         const SuiteOptions& options);

struct CalibrationReport {
  Regime regime;
  std::string target;
  int seeds = 0;
  int passed_own = 0;       // suites passing on samples of their own limit
  // Suites failing a distorted target: the limit with its log CF (for
  // Gaussian limits, its covariance) multiplied by distortion.
  int failed_distorted = 0;
  double distortion = 1.5;
  bool pass = false;  // at least 99% and 95% of seeds respectively
};

// Draws replicates directly from the regime's limit law for each seed.
CalibrationReport calibrate_suite(const RandomizedModel& rmodel, Regime regime,
                                  const SuiteOptions& options, int seeds = 100,
                                  double distortion = 1.5);

}  // namespace inarlab
