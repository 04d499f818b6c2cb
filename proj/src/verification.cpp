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


#include "inarlab/verification.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>

#include "inarlab/error.hpp"
#include "inarlab/rng.hpp"

namespace inarlab {

namespace {

void check_shape(const SampleMatrix& samples, const std::vector<double>& t_grid) {
  require(samples.cols == t_grid.size(), ErrorCode::kParameter,
          "sample matrix columns must match the time grid");
  require(static_cast<long>(samples.rows) >= kMinReplicates, ErrorCode::kStatistics,
          "at least 100 replicates are needed, got " + std::to_string(samples.rows));
}

SampleMatrix select_columns(const SampleMatrix& m, const std::vector<std::size_t>& keep) {
  SampleMatrix out(m.rows, keep.size());
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < keep.size(); ++c) out.at(r, c) = m.at(r, keep[c]);
  }
  return out;
}

// Covariances of all pairs i <= j over the rows in idx (or all rows).
std::vector<double> pair_covariances(const SampleMatrix& m, const std::vector<CovPair>& pairs,
                                     const std::vector<std::size_t>* idx) {
  const std::size_t rows = idx ? idx->size() : m.rows;
  std::vector<double> mean(m.cols, 0.0);
  for (std::size_t k = 0; k < rows; ++k) {
    const std::size_t r = idx ? (*idx)[k] : k;
    for (std::size_t c = 0; c < m.cols; ++c) mean[c] += m.at(r, c);
  }
  for (double& v : mean) v /= static_cast<double>(rows);
  std::vector<double> cov(pairs.size(), 0.0);
  std::vector<double> d(m.cols);
  for (std::size_t k = 0; k < rows; ++k) {
    const std::size_t r = idx ? (*idx)[k] : k;
    for (std::size_t c = 0; c < m.cols; ++c) d[c] = m.at(r, c) - mean[c];
    for (std::size_t p = 0; p < pairs.size(); ++p) cov[p] += d[pairs[p].i] * d[pairs[p].j];
  }
  for (double& v : cov) v /= static_cast<double>(rows - 1);
  return cov;
}

bool is_line(const LimitLaw& law) {
  return std::holds_alternative<limit::StableLine>(law.variant()) ||
         std::holds_alternative<limit::RandomSlopeMixing>(law.variant());
}

}  // namespace

std::vector<double> default_theta_grid() { return {-2, -1, -0.5, -0.25, 0.25, 0.5, 1, 2}; }

CfReport empirical_cf(const SampleMatrix& samples, const std::vector<double>& t_grid,
                      const std::vector<double>& theta_grid) {
  check_shape(samples, t_grid);
  require(!theta_grid.empty(), ErrorCode::kParameter, "theta grid is empty");
  CfReport rep;
  rep.t_grid = t_grid;
  rep.theta_grid = theta_grid;
  const double R = static_cast<double>(samples.rows);
  for (std::size_t c = 0; c < samples.cols; ++c) {
    for (double theta : theta_grid) {
      double re = 0, im = 0;
      for (std::size_t r = 0; r < samples.rows; ++r) {
        const double x = theta * samples.at(r, c);
        re += std::cos(x);
        im += std::sin(x);
      }
      const std::complex<double> phi(re / R, im / R);
      rep.empirical.push_back(phi);
      rep.se.push_back(std::sqrt(std::max(0.0, 1.0 - std::norm(phi)) / R));
    }
  }
  rep.cells = rep.empirical.size();
  return rep;
}

CfReport compare_cf(const SampleMatrix& samples, const std::vector<double>& t_grid,
                    const std::vector<double>& theta_grid, const CfTarget& target,
                    double gate) {
  require(gate > 0, ErrorCode::kParameter, "gate must be positive");
  CfReport rep = empirical_cf(samples, t_grid, theta_grid);
  rep.gate = gate;
  rep.pass = true;
  std::size_t k = 0;
  for (double t : t_grid) {
    for (double theta : theta_grid) {
      const std::complex<double> th = target(theta, t);
      rep.theoretical.push_back(th);
      const double dev = std::abs(rep.empirical[k] - th);
      rep.max_abs_dev = std::max(rep.max_abs_dev, dev);
      if (rep.se[k] > 0) {
        rep.max_z = std::max(rep.max_z, dev / rep.se[k]);
        if (dev > gate * rep.se[k]) rep.pass = false;
      } else if (dev > 1e-12) {
        rep.max_z = std::max(rep.max_z, HUGE_VAL);
        rep.pass = false;
      }
      ++k;
    }
  }
  return rep;
}

CovReport compare_cov(const SampleMatrix& samples, const std::vector<double>& t_grid,
                      const CovTarget& target, const CovOptions& options) {
  check_shape(samples, t_grid);
  require(options.gate > 0, ErrorCode::kParameter, "gate must be positive");
  require(options.bootstrap >= 2, ErrorCode::kParameter, "at least 2 bootstrap resamples");
  CovReport rep;
  rep.gate = options.gate;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    for (std::size_t j = i; j < t_grid.size(); ++j) rep.pairs.push_back({i, j, t_grid[i], t_grid[j]});
  }
  rep.empirical = pair_covariances(samples, rep.pairs, nullptr);
  for (std::size_t p = 0; p < rep.pairs.size(); ++p) {
    if (rep.pairs[p].i == rep.pairs[p].j) {
      require(rep.empirical[p] > 0, ErrorCode::kStatistics,
              "samples at t = " + std::to_string(rep.pairs[p].s) + " have zero variance");
    }
  }

  // Bootstrap standard errors.
  RngStream rng(options.seed, 0);
  const std::size_t R = samples.rows;
  std::vector<std::size_t> idx(R);
  std::vector<double> s1(rep.pairs.size(), 0.0), s2(rep.pairs.size(), 0.0);
  for (int b = 0; b < options.bootstrap; ++b) {
    for (auto& i : idx) {
      i = std::min(R - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(R)));
    }
    const auto cov = pair_covariances(samples, rep.pairs, &idx);
    for (std::size_t p = 0; p < cov.size(); ++p) {
      s1[p] += cov[p];
      s2[p] += cov[p] * cov[p];
    }
  }
  const double B = options.bootstrap;
  rep.pass = true;
  double tmax = 0;
  for (std::size_t p = 0; p < rep.pairs.size(); ++p) {
    const double m = s1[p] / B;
    rep.se.push_back(std::sqrt(std::max(0.0, (s2[p] / B - m * m) * B / (B - 1))));
    rep.theoretical.push_back(target(rep.pairs[p].s, rep.pairs[p].t));
    tmax = std::max(tmax, std::abs(rep.theoretical.back()));
  }
  for (std::size_t p = 0; p < rep.pairs.size(); ++p) {
    const double dev = std::abs(rep.empirical[p] - rep.theoretical[p]);
    if (std::abs(rep.theoretical[p]) > 1e-12 * tmax) {
      rep.max_rel_dev = std::max(rep.max_rel_dev, dev / std::abs(rep.theoretical[p]));
    }
    const double z = rep.se[p] > 0 ? dev / rep.se[p] : (dev > 0 ? HUGE_VAL : 0.0);
    rep.max_z = std::max(rep.max_z, z);
    if (z > options.gate) rep.pass = false;
  }

  const auto k = static_cast<Eigen::Index>(t_grid.size());
  Eigen::MatrixXd cov(k, k);
  double trace = 0;
  for (std::size_t p = 0; p < rep.pairs.size(); ++p) {
    const auto i = static_cast<Eigen::Index>(rep.pairs[p].i);
    const auto j = static_cast<Eigen::Index>(rep.pairs[p].j);
    cov(i, j) = cov(j, i) = rep.empirical[p];
    if (i == j) trace += rep.empirical[p];
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = eig.eigenvalues().minCoeff();
  rep.psd = rep.min_eigenvalue >= -1e-10 * trace;
  rep.pass = rep.pass && rep.psd;
  return rep;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), ErrorCode::kParameter, "KS needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_distance(std::vector<double> a, const std::function<double(double)>& cdf) {
  require(!a.empty(), ErrorCode::kParameter, "KS needs a nonempty sample");
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_critical(std::size_t n, std::size_t m, double level) {
  require(n > 0 && m > 0, ErrorCode::kParameter, "KS needs nonempty samples");
  require(level > 0 && level < 1, ErrorCode::kParameter, "level must lie in (0, 1)");
  const double c = std::sqrt(-0.5 * std::log(level / 2));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

SuiteEvaluation evaluate_against(const LimitLaw& law, const SampleMatrix& samples,
                                 const SuiteOptions& options) {
  const auto& grid = options.t_grid;
  check_shape(samples, grid);
  SuiteEvaluation ev;
  ev.pass = true;
  const bool bridge = std::holds_alternative<limit::Bridge>(law.variant());
  const auto one = std::find(grid.begin(), grid.end(), 1.0);

  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < grid.size(); ++c) keep.push_back(c);
  if (bridge && one != grid.end()) {
    const std::size_t c1 = static_cast<std::size_t>(one - grid.begin());
    bool zero = true;
    for (std::size_t r = 0; r < samples.rows; ++r) zero = zero && samples.at(r, c1) == 0.0;
    ev.bridge_zero = zero;
    ev.pass = zero;
    keep.erase(keep.begin() + static_cast<long>(c1));
  }

  if (law.is_gaussian() && !is_line(law)) {
    if (!keep.empty()) {
      std::vector<double> sub_grid;
      for (std::size_t c : keep) sub_grid.push_back(grid[c]);
      CovOptions co{options.gate, options.bootstrap, derive_key(options.seed, 0x636f76, 0)};
      ev.cov = compare_cov(select_columns(samples, keep), sub_grid,
                           [&](double s, double t) { return limit_cov(law, s, t); },
                           co);
      ev.pass = ev.pass && ev.cov->pass;
    }
  } else {
    try {
      (void)limit_cf(law, 1.0, grid.back());
      ev.cf = compare_cf(samples, grid, options.theta_grid,
                         [&](double theta, double t) { return limit_cf(law, theta, t); },
                         options.gate);
      ev.pass = ev.pass && ev.cf->pass;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCapability) throw;
    }
  }

  if (is_line(law)) {
    const std::size_t c = one != grid.end() ? static_cast<std::size_t>(one - grid.begin())
                                            : grid.size() - 1;
    const LimitPathSampler sampler(law, {grid[c]});
    RngStream rng(derive_key(options.seed, 0x6b73, 0), 0);
    std::vector<double> ref(options.ks_reference);
    for (double& v : ref) v = sampler(rng)[0];
    KsReport ks;
    ks.reference_size = ref.size();
    ks.distance = ks_distance(samples.column(c), std::move(ref));
    ks.critical = ks_critical(samples.rows, ks.reference_size);
    ks.pass = ks.distance <= ks.critical;
    ev.ks = ks;
    ev.pass = ev.pass && ks.pass;
  }
  return ev;
}

SuiteReport regime_suite(const RandomizedModel& rmodel, Regime regime,
                         const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  require(options.replicates >= kMinReplicates, ErrorCode::kStatistics,
          "a suite needs at least 100 replicates");
  const RegimeInfo& info = regime_info(regime);
  IterationOrder order = info.order;
  if (order == IterationOrder::kEither) {
    order = options.order == IterationOrder::kEither ? IterationOrder::kNFirst : options.order;
  }
  const LimitLaw law = limit_law_for(regime, rmodel);

  AggregationSpec base;
  base.t_grid = options.t_grid;
  base.centering = info.centering;
  base.replicates = options.replicates;
  const IteratedResult res =
      iterated_experiment(rmodel, regime, order, options.N_ladder, options.n_ladder, base,
                          ExperimentOptions{options.seed, options.step_budget});
  const ExperimentCell& cell = res.cells.back();

  SuiteReport rep;
  rep.regime = regime;
  rep.order = order;
  rep.target = law.describe();
  rep.N = cell.N;
  rep.n = cell.n;
  rep.replicates = options.replicates;
  rep.converged = res.converged;
  if (law.is_gaussian() && !std::holds_alternative<limit::Bridge>(law.variant())) {
    for (std::size_t c = 0; c < cell.copy_sq.cols; ++c) {
      double s = 0;
      for (std::size_t r = 0; r < cell.copy_sq.rows; ++r) s += cell.copy_sq.at(r, c);
      rep.pooled_variance.push_back(s / static_cast<double>(cell.copy_sq.rows));
    }
  }
  rep.evaluation = evaluate_against(law, cell.scaled, options);
  rep.samples = cell.scaled;
  rep.pass = rep.evaluation.pass;
  rep.status = rep.pass ? "pass" : "budget-limited";
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

CalibrationReport calibrate_suite(const RandomizedModel& rmodel, Regime regime,
                                  const SuiteOptions& options, int seeds, double distortion) {
  require(seeds > 0, ErrorCode::kParameter, "seed count must be positive");
  require(options.replicates >= kMinReplicates, ErrorCode::kStatistics,
          "calibration needs at least 100 replicates");
  const LimitLaw law = limit_law_for(regime, rmodel);
  const LimitLaw distorted = law.with_dispersion(distortion);
  const LimitPathSampler sampler(law, options.t_grid);
  CalibrationReport rep;
  rep.regime = regime;
  rep.target = law.describe();
  rep.seeds = seeds;
  rep.distortion = distortion;
  const auto R = static_cast<std::size_t>(options.replicates);
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t key =
        derive_key(options.seed, static_cast<std::uint64_t>(regime), static_cast<std::uint64_t>(s));
    RngStream rng(key, 0);
    SampleMatrix m(R, options.t_grid.size());
    for (std::size_t r = 0; r < R; ++r) {
      const auto path = sampler(rng);
      for (std::size_t c = 0; c < path.size(); ++c) m.at(r, c) = path[c];
    }
    SuiteOptions o = options;
    o.seed = key;
    if (evaluate_against(law, m, o).pass) ++rep.passed_own;
    if (!evaluate_against(distorted, m, o).pass) ++rep.failed_distorted;
  }
  rep.pass = rep.passed_own * 100 >= 99 * seeds && rep.failed_distorted * 100 >= 95 * seeds;
  return rep;
}

}  // namespace inarlab
