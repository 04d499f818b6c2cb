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


#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "inarlab/error.hpp"
#include "inarlab/limit_laws.hpp"
#include "inarlab/rng.hpp"
#include "inarlab/variates.hpp"
#include "inarlab/verification.hpp"

using namespace inarlab;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

SampleMatrix limit_samples(const LimitLaw& law, const std::vector<double>& grid, long r,
                           std::uint64_t seed) {
  const LimitPathSampler s(law, grid);
  RngStream rng(seed, 0);
  SampleMatrix m(static_cast<std::size_t>(r), grid.size());
  for (std::size_t i = 0; i < m.rows; ++i) {
    const auto p = s(rng);
    for (std::size_t c = 0; c < p.size(); ++c) m.at(i, c) = p[c];
  }
  return m;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

TEST_SUITE("verification") {

TEST_CASE("empirical characteristic function") {
  const std::vector<double> theta = default_theta_grid();
  CHECK(theta.size() == 8);

  const SampleMatrix zeros(200, 1);
  const auto z = empirical_cf(zeros, {1.0}, theta);
  for (std::size_t k = 0; k < z.cells; ++k) {
    CHECK(z.empirical[k] == std::complex<double>(1.0, 0.0));
    CHECK(z.se[k] == 0.0);
  }

  SampleMatrix pm(1000, 1);
  for (std::size_t r = 0; r < pm.rows; ++r) pm.at(r, 0) = r % 2 ? 1.0 : -1.0;
  const auto p = empirical_cf(pm, {1.0}, theta);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    CHECK(p.empirical[k].real() == doctest::Approx(std::cos(theta[k])).epsilon(1e-12));
    CHECK(std::abs(p.empirical[k].imag()) < 1e-12);
  }

  const long R = 1000000;
  SampleMatrix g(R, 1);
  RngStream rng(5, 0);
  for (double& v : g.values) v = variates::standard_normal(rng);
  const auto cf = compare_cf(g, {1.0}, {0.0, 1.0}, [](double th, double) {
    return std::complex<double>(std::exp(-th * th / 2), 0.0);
  });
  CHECK(cf.pass);
  CHECK(cf.empirical[0] == std::complex<double>(1.0, 0.0));
  CHECK(std::abs(cf.empirical[1] - std::exp(-0.5)) <= 4 * cf.se[1]);

  CHECK(code_of([] { empirical_cf(SampleMatrix(99, 1), {1.0}, {1.0}); }) ==
        ErrorCode::kStatistics);
  CHECK(code_of([] { empirical_cf(SampleMatrix(200, 2), {1.0}, {1.0}); }) ==
        ErrorCode::kParameter);
}

TEST_CASE("covariance comparison") {
  const std::vector<double> grid{0.25, 0.5, 0.75, 1.0};
  const double sigma = 1.3;
  const auto law = LimitLaw::scaled_bm(sigma);
  auto target = [&](double s, double t) { return sigma * sigma * std::min(s, t); };
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rep = compare_cov(limit_samples(law, grid, 2000, seed), grid, target,
                                 CovOptions{4.0, 200, seed});
    CHECK(rep.pairs.size() == 10);
    CHECK(rep.psd);
    passed += rep.pass;
  }
  CHECK(passed >= 19);

  // Two independent centered columns: zero cross covariance.
  SampleMatrix iid(5000, 2);
  RngStream rng(8, 0);
  for (double& v : iid.values) v = variates::standard_normal(rng);
  const auto z = compare_cov(iid, {1.0, 2.0}, [](double s, double t) { return s == t ? 1.0 : 0.0; });
  CHECK(z.pass);

  const auto big = limit_samples(law, grid, 100000, 9);
  const auto ok = compare_cov(big, grid, target, CovOptions{4.0, 100, 1});
  CHECK(ok.pass);
  CHECK(ok.max_rel_dev < 0.03);
  const auto wrong = compare_cov(big, grid, [&](double s, double t) { return 1.5 * target(s, t); },
                                 CovOptions{4.0, 100, 1});
  CHECK_FALSE(wrong.pass);
  CHECK(wrong.max_rel_dev == doctest::Approx(1.0 / 3).epsilon(0.05));

  // Deterministic given the seed.
  const auto a = compare_cov(big, grid, target, CovOptions{4.0, 50, 3});
  const auto b = compare_cov(big, grid, target, CovOptions{4.0, 50, 3});
  CHECK(a.se == b.se);

  CHECK(code_of([] { compare_cov(SampleMatrix(200, 1), {1.0}, [](double, double) { return 0.0; }); }) ==
        ErrorCode::kStatistics);
}

TEST_CASE("Kolmogorov-Smirnov distances") {
  RngStream rng(3, 0);
  std::vector<double> u(100000);
  for (double& v : u) v = rng.uniform();
  CHECK(ks_distance(u, u) == 0.0);
  CHECK(ks_distance(u, [](double x) { return x; }) < 0.01);

  std::vector<double> a(10000), b(10000);
  for (double& v : a) v = variates::standard_normal(rng);
  for (double& v : b) v = 1 + variates::standard_normal(rng);
  // sup |Phi(x) - Phi(x - 1)| = 2 Phi(1/2) - 1 = 0.383.
  const double d = ks_distance(a, b);
  CHECK(d > 0.3);
  CHECK(d == doctest::Approx(2 * normal_cdf(0.5) - 1).epsilon(0.06));

  std::vector<double> one{0.5};
  CHECK(ks_distance(one, [](double x) { return x; }) == doctest::Approx(0.5));
  CHECK(ks_critical(100, 100, 0.05) == doctest::Approx(1.358 * std::sqrt(0.02)).epsilon(1e-3));
}

TEST_CASE("suite evaluations on limit samples") {
  SuiteOptions o;
  o.bootstrap = 100;
  o.ks_reference = 5000;
  const RandomizedModel pos(1.0, MixingLaw::beta(0, 0.5));
  const RandomizedModel neg(2.0, MixingLaw::beta(0, -0.5));

  const auto fbm = limit_law_for(Regime::kT45, pos);
  const auto ef = evaluate_against(fbm, limit_samples(fbm, o.t_grid, 2000, 1), o);
  CHECK(ef.cov.has_value());
  CHECK_FALSE(ef.cf.has_value());
  CHECK(ef.pass);

  const auto br = limit_law_for(Regime::kC412b, neg);
  const auto eb = evaluate_against(br, limit_samples(br, o.t_grid, 2000, 2), o);
  CHECK(eb.bridge_zero.value());
  CHECK(eb.cf->cells == 32);
  CHECK(eb.pass);

  const auto line = limit_law_for(Regime::kT46, neg);
  const auto el = evaluate_against(line, limit_samples(line, o.t_grid, 2000, 3), o);
  CHECK(el.ks.has_value());
  CHECK(el.pass);
  const auto wrong = evaluate_against(line.with_dispersion(1.5), limit_samples(line, o.t_grid, 2000, 3), o);
  CHECK_FALSE(wrong.pass);

  const auto cal = calibrate_suite(neg, Regime::kT48, o, 10);
  CHECK(cal.seeds == 10);
  CHECK(cal.passed_own >= 9);
  CHECK(cal.failed_distorted >= 9);
}

TEST_CASE("regime suites") {
  SuiteOptions o;
  o.N_ladder = {200};
  o.n_ladder = {500};
  o.replicates = 2000;
  o.bootstrap = 200;
  const auto t33 = regime_suite(RandomizedModel(1.0, MixingLaw::degenerate(0.5)), Regime::kT33, o);
  CHECK(t33.pass);
  CHECK(t33.status == "pass");
  CHECK(t33.evaluation.cov->theoretical.back() == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(t33.pooled_variance.back() == doctest::Approx(6.0).epsilon(0.03));

  o.replicates = 400;
  const auto t49 = regime_suite(RandomizedModel(1.0, MixingLaw::beta(0, 2)), Regime::kT49, o);
  CHECK(t49.evaluation.cov->theoretical.back() == doctest::Approx(4.5).epsilon(1e-10));
  CHECK(t49.pass);

  o.N_ladder = {50};
  o.n_ladder = {200};
  const auto c412a = regime_suite(RandomizedModel(1.0, MixingLaw::beta(0, 0.5)), Regime::kC412a, o);
  CHECK(c412a.evaluation.bridge_zero.value());

  o.replicates = 150;
  const auto again = regime_suite(RandomizedModel(1.0, MixingLaw::beta(0, 0.5)), Regime::kC412a, o);
  const auto twice = regime_suite(RandomizedModel(1.0, MixingLaw::beta(0, 0.5)), Regime::kC412a, o);
  CHECK(again.evaluation.cov->empirical == twice.evaluation.cov->empirical);
  CHECK(again.evaluation.cov->se == twice.evaluation.cov->se);

  CHECK(code_of([&] { regime_suite(RandomizedModel(1.0, MixingLaw::beta(0, 0.5)), Regime::kT46, o); }) ==
        ErrorCode::kRange);
  o.replicates = 50;
  CHECK(code_of([&] { regime_suite(RandomizedModel(1.0, MixingLaw::beta(0, 0.5)), Regime::kT45, o); }) ==
        ErrorCode::kStatistics);
}

}  // TEST_SUITE
