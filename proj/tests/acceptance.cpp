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


// Acceptance run. Prints one PASS/FAIL line per criterion; exits nonzero when
// any selected criterion fails.

#include <CLI11.hpp>
#include <algorithm>
#include <boost/math/distributions/poisson.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "inarlab/aggregation.hpp"
#include "inarlab/analytics.hpp"
#include "inarlab/limit_laws.hpp"
#include "inarlab/rng.hpp"
#include "inarlab/sampling.hpp"
#include "inarlab/verification.hpp"

using namespace inarlab;
using cplx = std::complex<double>;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double psi1_beta(double a, double b) {
  return std::tgamma(a + b + 2) / (std::tgamma(a + 1) * std::tgamma(b + 1));
}

SuiteOptions suite_options(long N, long n, long R) {
  SuiteOptions o;
  o.N_ladder = {N};
  o.n_ladder = {n};
  o.replicates = R;
  return o;
}

Outcome pgf_and_pmf() {
  Stopwatch sw;
  RngStream r(101, 0);
  double worst_form = 0;
  for (int i = 0; i < 1000; ++i) {
    const int k = i % 7;
    const InarModel m(0.1 + 3 * r.uniform(), 0.02 + 0.96 * r.uniform());
    std::vector<cplx> z(k + 1);
    for (auto& zi : z) zi = std::polar(std::sqrt(r.uniform()), 2 * std::numbers::pi * r.uniform());
    worst_form = std::max(worst_form, std::abs(joint_pgf(m, z, PgfForm::kPairwiseFactor) -
                                               joint_pgf(m, z, PgfForm::kProductWord)));
  }
  // (X_0, X_1) = (U + V, U + W), U ~ Poi(1), V, W ~ Poi(1).
  const int top = 30;
  const auto p = pgf_invert_pmf(InarModel(1.0, 0.5), 1, top);
  boost::math::poisson_distribution<double> poi(1.0);
  double worst_cell = 0;
  for (int a = 0; a <= top; ++a) {
    for (int b = 0; b <= top; ++b) {
      double ref = 0;
      for (int u = 0; u <= std::min(a, b); ++u)
        ref += pdf(poi, u) * pdf(poi, a - u) * pdf(poi, b - u);
      worst_cell = std::max(worst_cell, std::fabs(p.at({a, b}) - ref));
    }
  }
  const double s = sw.seconds();
  return {worst_form <= 1e-12 && worst_cell <= 1e-9 && s < 5,
          fmt("forms max |diff| %.2e over 1000 points, pmf max cell error %.2e, %.2f s",
              worst_form, worst_cell, s)};
}

Outcome autocovariances() {
  Stopwatch sw;
  const double lambda = 1.0, alpha = 0.5;
  const InarModel m(lambda, alpha);
  const long R = 100000;
  const int K = 5;
  std::vector<std::vector<double>> x(K + 1, std::vector<double>(R));
  for (long i = 0; i < R; ++i) {
    RngStream s(102, i);
    const auto path = simulate_inar_path(m, K, s);
    for (int k = 0; k <= K; ++k) x[k][i] = static_cast<double>(path[k]);
  }
  auto mean = [&](const std::vector<double>& v) {
    double t = 0;
    for (double e : v) t += e;
    return t / static_cast<double>(v.size());
  };
  const double m0 = mean(x[0]);
  double worst_z = 0;
  std::string vals;
  for (int k = 0; k <= K; ++k) {
    const double mk = mean(x[k]);
    std::vector<double> prod(R);
    for (long i = 0; i < R; ++i) prod[i] = (x[0][i] - m0) * (x[k][i] - mk);
    const double c = mean(prod);
    double v = 0;
    for (double e : prod) v += (e - c) * (e - c);
    const double se = std::sqrt(v / (R - 1) / R);
    const double target = lambda * std::pow(alpha, k) / (1 - alpha);
    worst_z = std::max(worst_z, std::fabs(c - target) / se);
    vals += fmt(" %.4f", c);
  }
  const double s = sw.seconds();
  return {worst_z <= 4 && s < 30,
          fmt("lags 0..5:%s vs 2*0.5^k, max |z| %.2f, %.1f s", vals.c_str(), worst_z, s)};
}

Outcome deterministic_alpha() {
  const double lambda = 1.0, alpha = 0.5;
  const auto rep = regime_suite(RandomizedModel(lambda, MixingLaw::degenerate(alpha)),
                                Regime::kT33, suite_options(200, 500, 2000));
  const auto& cov = *rep.evaluation.cov;
  double target_err = 0;
  for (std::size_t p = 0; p < cov.pairs.size(); ++p) {
    const double ref = (1 + alpha) * lambda / ((1 - alpha) * (1 - alpha)) *
                       std::min(cov.pairs[p].s, cov.pairs[p].t);
    target_err = std::max(target_err, std::fabs(cov.theoretical[p] - ref));
  }
  return {cov.pass && target_err < 1e-12 && rep.seconds < 180,
          fmt("cov max |z| %.2f, max rel dev %.3f, psd %d, %.1f s", cov.max_z,
              cov.max_rel_dev, cov.psd, rep.seconds)};
}

Outcome fbm_regime() {
  const double lambda = 1.0, beta = 0.5;
  const long N = 5000, n = 2000;
  const RandomizedModel rm(lambda, MixingLaw::beta(0.0, beta));
  const double c2 = 2 * lambda * psi1_beta(0, beta) * std::tgamma(beta) / ((2 - beta) * (1 - beta));
  auto limit_cov = [&](double s, double t) {
    return c2 * (std::pow(s, 2 - beta) + std::pow(t, 2 - beta) - std::pow(std::fabs(t - s), 2 - beta)) / 2;
  };
  // Expected covariance of the finite-(N, n) statistic, for reference.
  const double scale = regime_scale(Regime::kT45, beta, N, n);
  const std::vector<double> grid = SuiteOptions{}.t_grid;
  double finite_rel = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      const long lo = static_cast<long>(std::floor(n * grid[i]));
      const long hi = static_cast<long>(std::floor(n * grid[j]));
      // When alpha rounds to 1 every alpha^{|k-l|} is 1 to double precision.
      const double e = mixing_expectation(rm.mixing, [&](double x, double u) {
        if (x <= 0) return static_cast<double>(lo);
        if (x >= 1) return static_cast<double>(lo) * static_cast<double>(hi) / u;
        return double_geom_sum(x, lo, hi);
      }, 0.0, 1e-8);
      const double exact = scale * scale * N * lambda * e;
      finite_rel = std::max(finite_rel, std::fabs(exact / limit_cov(grid[i], grid[j]) - 1));
    }
  }

  const auto rep = regime_suite(rm, Regime::kT45, suite_options(N, n, 2000));
  const auto& cov = *rep.evaluation.cov;
  double target_err = 0;
  for (std::size_t p = 0; p < cov.pairs.size(); ++p) {
    const double ref = limit_cov(cov.pairs[p].s, cov.pairs[p].t);
    target_err = std::max(target_err, std::fabs(cov.theoretical[p] - ref) / ref);
  }
  return {cov.max_rel_dev <= 0.10 && target_err < 1e-12 && rep.seconds < 600,
          fmt("max rel dev %.3f (limit 0.10), max |z| %.2f, emp var(1) %.3f vs %.3f; "
              "finite-n expectation deviates from the limit by up to %.3f; %.0f s",
              cov.max_rel_dev, cov.max_z, cov.empirical.back(), cov.theoretical.back(),
              finite_rel, rep.seconds)};
}

Outcome cauchy_regime() {
  const double lambda = 2.0, beta = -0.5;
  auto o = suite_options(100000, 50, 2000);
  o.t_grid = {1.0};
  const auto rep = regime_suite(RandomizedModel(lambda, MixingLaw::beta(0.0, beta)),
                                Regime::kT46, o);
  const auto& cf = *rep.evaluation.cf;
  const double K = psi1_beta(0, beta) * std::pow(lambda / 2, 1 + beta) *
                   std::tgamma(-beta) / (1 + beta);
  double target_err = 0;
  for (std::size_t c = 0; c < cf.theta_grid.size(); ++c)
    target_err = std::max(target_err, std::abs(cf.theoretical[c] - std::exp(-K * std::fabs(cf.theta_grid[c]))));
  std::string ks;
  if (rep.evaluation.ks)
    ks = fmt(", KS %.4f (critical %.4f)", rep.evaluation.ks->distance, rep.evaluation.ks->critical);
  return {cf.pass && target_err < 1e-12,
          fmt("K = %.6f, CF max |z| %.2f over %zu cells%s, %.0f s", K, cf.max_z, cf.cells,
              ks.c_str(), rep.seconds)};
}

Outcome subordinated_levy() {
  const double lambda = 1.0, beta = 0.0;
  const auto rep = regime_suite(RandomizedModel(lambda, MixingLaw::beta(0.0, beta)),
                                Regime::kT48, suite_options(200, 20000, 2000));
  const auto& cf = *rep.evaluation.cf;
  const double k = std::pow(2 * lambda, (1 + beta) / 2) * psi1_beta(0, beta) *
                   std::tgamma((1 - beta) / 2) / (1 + beta);
  double target_err = 0;
  for (std::size_t i = 0; i < cf.t_grid.size(); ++i)
    for (std::size_t j = 0; j < cf.theta_grid.size(); ++j) {
      const double th = cf.theta_grid[j], t = cf.t_grid[i];
      const double ref = std::exp(-k * std::pow(th * th * t / 2, (1 + beta) / 2));
      target_err = std::max(target_err, std::abs(cf.theoretical[i * cf.theta_grid.size() + j] - ref));
    }
  // Laplace transform of the positive stable sampler.
  const long R = 1000000;
  double worst_z = 0;
  for (double b : {beta, -0.5, 0.6}) {
    RngStream g(106, static_cast<std::uint64_t>(std::lround((b + 1) * 10)));
    std::vector<double> y(R);
    for (auto& v : y) v = sample_positive_stable(b, k, g);
    for (double th : {0.5, 1.0, 2.0}) {
      double m = 0, m2 = 0;
      for (double v : y) {
        const double e = std::exp(-th * v);
        m += e;
        m2 += e * e;
      }
      m /= R;
      const double se = std::sqrt((m2 / R - m * m) / R);
      worst_z = std::max(worst_z, std::fabs(m - std::exp(-k * std::pow(th, (1 + b) / 2))) / se);
    }
  }
  return {cf.pass && target_err < 1e-12 && worst_z <= 4,
          fmt("k = %.6f, CF max |z| %.2f over %zu cells, Laplace max |z| %.2f (R = 1e6), %.0f s",
              k, cf.max_z, cf.cells, worst_z, rep.seconds)};
}

Outcome short_memory_variance() {
  const double lambda = 1.0, beta = 2.0;
  // lambda E (1 + alpha) / (1 - alpha)^2 with density 3 (1 - x)^2.
  const double sigma2 = lambda * 3 * 1.5;
  bool ok = true;
  std::string detail = fmt("sigma^2 = %.4f;", sigma2);
  for (auto order : {IterationOrder::kNFirst, IterationOrder::knFirst}) {
    auto o = suite_options(5000, 2000, 500);
    o.t_grid = {1.0};
    o.order = order;
    const auto rep = regime_suite(RandomizedModel(lambda, MixingLaw::beta(0.0, beta)),
                                  Regime::kT49, o);
    const double pooled = rep.pooled_variance.at(0);
    const double rel = pooled / sigma2 - 1;
    const auto col = rep.samples.column(0);
    double m = 0, v = 0;
    for (double e : col) m += e;
    m /= static_cast<double>(col.size());
    for (double e : col) v += (e - m) * (e - m);
    v /= static_cast<double>(col.size() - 1);
    ok = ok && std::fabs(rel) <= 0.05;
    detail += fmt(" %s: pooled %.4f (%+.2f%%), replicate variance %.4f, %.0f s;",
                  order_name(order).c_str(), pooled, 100 * rel, v, rep.seconds);
  }
  detail.pop_back();
  return {ok, detail};
}

Outcome bridges() {
  struct Case {
    Regime regime;
    double beta;
    long N, n, R;
  };
  const std::vector<Case> cases{{Regime::kC412a, 0.5, 200, 500, 200},
                                {Regime::kC412b, -0.5, 200, 500, 200},
                                {Regime::kC412c, 2.0, 500, 1000, 2000}};
  bool cov_pass = false;
  std::string detail;
  long nonzero = 0;
  for (const auto& c : cases) {
    const auto rep = regime_suite(RandomizedModel(1.0, MixingLaw::beta(0.0, c.beta)), c.regime,
                                  suite_options(c.N, c.n, c.R));
    const auto last = rep.samples.column(rep.samples.cols - 1);
    for (double v : last) nonzero += v != 0.0;
    if (c.regime == Regime::kC412c) {
      const auto& cov = *rep.evaluation.cov;
      double target_err = 0;
      const double sigma2 = 4.5;
      for (std::size_t p = 0; p < cov.pairs.size(); ++p) {
        const double s = cov.pairs[p].s, t = cov.pairs[p].t;
        target_err = std::max(target_err, std::fabs(cov.theoretical[p] - sigma2 * (std::min(s, t) - s * t)));
      }
      cov_pass = cov.pass && target_err < 1e-12;
      detail += fmt(" C412c cov max |z| %.2f, max rel dev %.3f, %.0f s;", cov.max_z,
                    cov.max_rel_dev, rep.seconds);
    }
  }
  detail = fmt("nonzero samples at t=1: %ld;", nonzero) + detail;
  detail.pop_back();
  return {nonzero == 0 && cov_pass, detail};
}

Outcome markov_gaps() {
  Stopwatch sw;
  RngStream r(109, 0);
  double min_gap = 1;
  for (int i = 0; i < 20; ++i) {
    const double lambda = 0.2 + 2.8 * r.uniform();
    MixingLaw law = MixingLaw::degenerate(0.5);
    if (i % 2 == 0) {
      law = MixingLaw::beta(3 * r.uniform(), -0.9 + 3.9 * r.uniform());
    } else {
      const double a1 = 0.05 + 0.9 * r.uniform(), a2 = 0.05 + 0.9 * r.uniform();
      const double w = 0.1 + 0.8 * r.uniform();
      law = MixingLaw::atoms({a1, a2}, {w, 1 - w});
    }
    min_gap = std::min(min_gap, markov_gap(RandomizedModel(lambda, law)).gap);
  }
  double deg = 0;
  for (double a : {0.1, 0.5, 0.9})
    deg = std::max(deg, std::fabs(markov_gap(RandomizedModel(1.3, MixingLaw::degenerate(a))).gap));

  // Two equally likely atoms. Given alpha = a the start is Poisson(lambda / (1 - a)),
  // and X_2 = 0 after X_1 = 1 has probability (1 - a) e^{-lambda}.
  const double lambda = 1.0;
  const auto two = markov_gap(RandomizedModel(lambda, MixingLaw::atoms({0.2, 0.8}, {0.5, 0.5})));
  double n2 = 0, d2 = 0, n1 = 0, d1 = 0;
  for (double a : {0.2, 0.8}) {
    const double e = std::exp(-lambda / (1 - a));
    n2 += 0.5 * (1 - a) * std::exp(-lambda) * e;
    d2 += 0.5 * e;
    n1 += 0.5 * std::exp(-lambda) * e;
    d1 += 0.5 * e / (1 - a);
  }
  const double oracle_err = std::fabs(two.gap - (n2 / d2 - n1 / d1));

  const RandomizedModel rm(lambda, MixingLaw::beta(0.0, 2.0));
  const auto rep = markov_gap(rm);
  long c2 = 0, h2 = 0, c1 = 0, h1 = 0;
  const long R = 10000000;
  for (long i = 0; i < R; ++i) {
    RngStream s(1090, i);
    const auto path = simulate_inar_path(InarModel(lambda, sample_mixing(rm.mixing, s)), 2, s);
    if (path[1] != 1) continue;
    ++c1;
    h1 += path[2] == 0;
    if (path[0] == 0) {
      ++c2;
      h2 += path[2] == 0;
    }
  }
  const double f2 = double(h2) / c2, f1 = double(h1) / c1;
  const double z2 = std::fabs(f2 - rep.p_cond2) / std::sqrt(rep.p_cond2 * (1 - rep.p_cond2) / c2);
  const double z1 = std::fabs(f1 - rep.p_cond1) / std::sqrt(rep.p_cond1 * (1 - rep.p_cond1) / c1);
  return {min_gap >= 0 && deg <= 1e-8 && oracle_err <= 1e-10 && std::max(z1, z2) <= 4,
          fmt("min gap over 20 laws %.3e, degenerate max |gap| %.1e, two-atom error %.1e, "
              "MC |z| %.2f and %.2f (R = 1e7), %.0f s",
              min_gap, deg, oracle_err, z2, z1, sw.seconds())};
}

Outcome fbm_identity() {
  Stopwatch sw;
  double worst = 0;
  for (double b : {0.1, 0.25, 0.5, 0.75, 0.9}) worst = std::max(worst, std::fabs(fbm_variance_check(b) - 1));
  const double s = sw.seconds();
  return {worst <= 1e-6 && s < 1, fmt("max |value - 1| %.2e, %.3f s", worst, s)};
}

Outcome regular_variation() {
  const double beta = 0.5;
  const long k = 200;
  const auto rv = regvar_limit(MixingLaw::beta(0.0, beta), 1.0, {k});
  // E alpha^k / (1 - alpha) = 1.5 B(k + 1, 1/2) for the density 1.5 (1 - x)^{1/2}.
  const double oracle = std::pow(double(k), beta) * 1.5 * boost::math::beta(k + 1.0, 0.5);
  const double limit = 1.5 * std::tgamma(beta);
  const double rel = rv.values[0] / limit - 1;
  return {std::fabs(rel) <= 0.02 && std::fabs(rv.values[0] / oracle - 1) < 1e-10 &&
              std::fabs(rv.limit / limit - 1) < 1e-13,
          fmt("value %.6f (direct %.6f), limit %.6f, rel dev %+.4f", rv.values[0], oracle,
              limit, rel)};
}

Outcome tail() {
  const double x = 1e4, lambda = 1.0, beta = 0.5;
  const auto t = tail_asymptotic(MixingLaw::beta(0.0, beta), lambda, {x});
  // lambda (2 - u) / u^2 = x with u = 1 - alpha, and P(1 - alpha < u) = u^{3/2}.
  double lo = 0, hi = 1;
  for (int it = 0; it < 200; ++it) {
    const double mid = (lo + hi) / 2;
    (lambda * (2 - mid) / (mid * mid) > x ? lo : hi) = mid;
  }
  const double oracle = std::pow(x, (1 + beta) / 2) * std::pow((lo + hi) / 2, 1.5);
  const double limit = 1.5 * std::pow(2 * lambda, (1 + beta) / 2) / (1 + beta);
  const double rel = t.values[0] / limit - 1;
  return {std::fabs(rel) <= 0.03 && std::fabs(t.values[0] / oracle - 1) < 1e-10 &&
              std::fabs(t.limit / limit - 1) < 1e-13,
          fmt("value %.6f (direct %.6f), limit %.6f, rel dev %+.4f", t.values[0], oracle, limit,
              rel)};
}

Outcome calibration() {
  struct Case {
    Regime regime;
    double lambda;
    MixingLaw law;
  };
  const std::vector<Case> cases{
      {Regime::kT33, 1, MixingLaw::degenerate(0.5)}, {Regime::kT45, 1, MixingLaw::beta(0, 0.5)},
      {Regime::kT46, 2, MixingLaw::beta(0, -0.5)},   {Regime::kT47, 1, MixingLaw::beta(0, 0)},
      {Regime::kT48, 1, MixingLaw::beta(0, 0)},      {Regime::kT49, 1, MixingLaw::beta(0, 2)},
      {Regime::kT410, 1, MixingLaw::beta(0, 0.5)},   {Regime::kT411, 1, MixingLaw::beta(0, 2)},
      {Regime::kC412a, 1, MixingLaw::beta(0, 0.5)},  {Regime::kC412b, 1, MixingLaw::beta(0, -0.5)},
      {Regime::kC412c, 1, MixingLaw::beta(0, 2)}};
  Stopwatch sw;
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto rep = calibrate_suite(RandomizedModel(c.lambda, c.law), c.regime, SuiteOptions{});
    ok = ok && rep.pass;
    detail += fmt(" %s %d/%d", regime_name(c.regime).c_str(), rep.passed_own, rep.failed_distorted);
  }
  return {ok, "own pass / distorted fail per 100 seeds:" + detail + fmt(", %.0f s", sw.seconds())};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"joint pgf forms and pmf inversion", pgf_and_pmf},
      {"autocovariances of the fixed-alpha chain", autocovariances},
      {"fixed alpha, Brownian limit covariance", deterministic_alpha},
      {"beta = 0.5, fractional Brownian limit covariance", fbm_regime},
      {"beta = -0.5, symmetric stable line CF", cauchy_regime},
      {"beta = 0, subordinated Levy CF and positive stable Laplace transform", subordinated_levy},
      {"beta = 2, variance at t = 1 in both orders", short_memory_variance},
      {"bridges vanish at t = 1 and the beta > 1 bridge covariance", bridges},
      {"Markov gap", markov_gaps},
      {"fractional Brownian variance identity", fbm_identity},
      {"regular variation of E alpha^k / (1 - alpha)", regular_variation},
      {"tail of lambda (1 + alpha) / (1 - alpha)^2", tail},
      {"calibration and power of every suite", calibration},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> selected;
  int fail_code = 1;
  app.add_option("--criterion", selected, "criteria to run (default: all)")
      ->check(CLI::Range(1, static_cast<int>(criteria().size())));
  app.add_option("--fail-code", fail_code, "exit code when a criterion fails");
  CLI11_PARSE(app, argc, argv);
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria().size()); ++i) selected.push_back(i);

  bool all = true;
  for (int i : selected) {
    const auto& c = criteria()[i - 1];
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    all = all && out.pass;
    std::printf("%s %2d %s: %s\n", out.pass ? "PASS" : "FAIL", i, c.name, out.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : fail_code;
}
