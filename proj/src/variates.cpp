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

#include "inarlab/variates.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "inarlab/error.hpp"

namespace inarlab::variates {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfLogTwoPi = 0.91893853320467274178;

// log(k!) - [(k + 1/2) log(k + 1) - (k + 1) + log(sqrt(2 pi))], the correction
// term used by BTRD.
double stirling_tail(double k) noexcept {
  static constexpr double kTable[10] = {
      0.08106146679532726, 0.04134069595540929, 0.02767792568499834,
      0.02079067210376509, 0.01664469118982119, 0.01387612882307075,
      0.01189670994589177, 0.01041126526197209, 0.009255462182712733,
      0.008330563433362871};
  if (k < 10) return kTable[static_cast<int>(k)];
  const double ikp1 = 1.0 / (k + 1);
  const double ikp1_sq = ikp1 * ikp1;
  return (1.0 / 12 - (1.0 / 360 - (1.0 / 1260) * ikp1_sq) * ikp1_sq) * ikp1;
}

// log(n!) - log(sqrt(2 pi n) (n/e)^n).
double stirlerr(double n) noexcept {
  if (n <= 15.0) {
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - kHalfLogTwoPi;
  }
  const double nn = n * n;
  constexpr double s0 = 1.0 / 12, s1 = 1.0 / 360, s2 = 1.0 / 1260,
                   s3 = 1.0 / 1680, s4 = 1.0 / 1188;
  if (n > 500) return (s0 - s1 / nn) / n;
  if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x / m) + m - x without cancellation (Loader 2000).
double bd0(double x, double m) noexcept {
  if (std::fabs(x - m) < 0.1 * (x + m)) {
    const double v = (x - m) / (x + m);
    double s = (x - m) * v;
    double ej = 2 * x * v;
    const double v2 = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v2;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / m) + m - x;
}

struct PtrsConstants {
  double mean, b, a, inv_alpha, v_r, log_inv_alpha;
};

PtrsConstants ptrs_constants(double mu) noexcept {
  PtrsConstants c{};
  c.mean = mu;
  c.b = 0.931 + 2.53 * std::sqrt(mu);
  c.a = -0.059 + 0.02483 * c.b;
  c.inv_alpha = 1.1239 + 1.1328 / (c.b - 3.4);
  c.v_r = 0.9277 - 3.6224 / (c.b - 2);
  c.log_inv_alpha = std::log(c.inv_alpha);
  return c;
}

double ptrs_draw(const PtrsConstants& c, RngStream& rng) noexcept {
  // Hormann (1993) transformed rejection with squeeze.
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2 * c.a / us + c.b) * u + c.mean + 0.43);
    if (us >= 0.07 && v <= c.v_r) return k;
    if (k < 0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + c.log_inv_alpha - std::log(c.a / (us * us) + c.b) <=
        poisson_log_pmf(k, c.mean)) {
      return k;
    }
  }
}

double poisson_search(double mean, RngStream& rng) noexcept {
  double pmf = std::exp(-mean);
  double cdf = pmf;
  double u = rng.uniform();
  double k = 0;
  while (u > cdf) {
    k += 1;
    pmf *= mean / k;
    const double next = cdf + pmf;
    if (next == cdf) break;  // remaining mass below double resolution
    cdf = next;
  }
  return k;
}

double binomial_inversion(double n, double p, double q, double q_pow_n,
                          RngStream& rng) noexcept {
  const double s = p / q;
  const double a = (n + 1) * s;
  double r = q_pow_n;
  double u = rng.uniform();
  double x = 0;
  while (u > r) {
    u -= r;
    x += 1;
    const double r1 = (a / x - s) * r;
    if (r1 < std::numeric_limits<double>::epsilon() && r1 < r) break;
    r = r1;
  }
  return x > n ? n : x;
}

// BTRD (Hormann 1993). Requires p <= 1/2 and (n + 1) p >= 11.
double binomial_btrd(double n, double p, double q, RngStream& rng) noexcept {
  const double m = std::floor((n + 1) * p);
  const double r = p / q;
  const double nr = (n + 1) * r;
  const double npq = n * p * q;
  const double sqrt_npq = std::sqrt(npq);
  const double b = 1.15 + 2.53 * sqrt_npq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = n * p + 0.5;
  const double alpha = (2.83 + 5.1 / b) * sqrt_npq;
  const double v_r = 0.92 - 4.2 / b;
  const double u_rv_r = 0.86 * v_r;

  for (;;) {
    double u;
    double v = rng.uniform();
    if (v <= u_rv_r) {
      u = v / v_r - 0.43;
      return std::floor((2 * a / (0.5 - std::fabs(u)) + b) * u + c);
    }
    if (v >= v_r) {
      u = rng.uniform() - 0.5;
    } else {
      u = v / v_r - 0.93;
      u = (u < 0 ? -0.5 : 0.5) - u;
      v = rng.uniform() * v_r;
    }
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2 * a / us + b) * u + c);
    if (k < 0 || k > n) continue;
    v = v * alpha / (a / (us * us) + b);
    const double km = std::fabs(k - m);
    if (km <= 15) {
      double f = 1;
      if (m < k) {
        for (double i = m + 1; i <= k; i += 1) f *= nr / i - r;
      } else if (m > k) {
        for (double i = k + 1; i <= m; i += 1) v *= nr / i - r;
      }
      if (v <= f) return k;
      continue;
    }
    v = std::log(v);
    const double rho =
        (km / npq) * (((km / 3.0 + 0.625) * km + 1.0 / 6) / npq + 0.5);
    const double t = -km * km / (2 * npq);
    if (v < t - rho) return k;
    if (v > t + rho) continue;
    const double nm = n - m + 1;
    const double h = (m + 0.5) * std::log((m + 1) / (r * nm)) +
                     stirling_tail(m) + stirling_tail(n - m);
    const double nk = n - k + 1;
    // (n + 1) log(nm / nk) written with log1p: nm / nk is within 1/n of one
    // when n is huge.
    const double bound = h + (n + 1) * std::log1p((k - m) / nk) +
                         (k + 0.5) * std::log(nk * r / (k + 1)) -
                         stirling_tail(k) - stirling_tail(n - k);
    if (v <= bound) return k;
  }
}

}  // namespace

double standard_normal(RngStream& rng) noexcept {
  const double radius = std::sqrt(-2.0 * std::log(rng.uniform()));
  return radius * std::cos(kTwoPi * rng.uniform());
}

double exponential(RngStream& rng) noexcept { return -std::log(rng.uniform()); }

double gamma(double shape, RngStream& rng) noexcept {
  if (shape < 1.0) {
    // Gamma(a) = Gamma(a + 1) * U^(1/a).
    const double g = gamma(shape + 1.0, rng);
    return g * std::exp(std::log(rng.uniform()) / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

BetaDraw beta(double a, double b, RngStream& rng) noexcept {
  if (a == 1.0) {
    // Inverse CDF: the complement of Beta(1, b) is U^(1/b).
    const double u = std::pow(rng.uniform(), 1.0 / b);
    return {1.0 - u, u};
  }
  for (;;) {
    const double x = gamma(a, rng);
    const double y = gamma(b, rng);
    const double s = x + y;
    if (!(s > 0.0)) continue;
    return {x / s, y / s};
  }
}

double poisson_log_pmf(double k, double mean) noexcept {
  if (k < 0) return -std::numeric_limits<double>::infinity();
  if (k == 0) return -mean;
  if (mean < 1e4 && k < 1e4) {
    return -mean + k * std::log(mean) - std::lgamma(k + 1.0);
  }
  return -stirlerr(k) - bd0(k, mean) - 0.5 * std::log(kTwoPi * k);
}

PoissonSampler::PoissonSampler(double mean)
    : mean_(mean), use_inversion_(mean < 10.0) {
  require(mean > 0.0 && std::isfinite(mean), ErrorCode::kParameter,
          "Poisson mean must be positive and finite");
  if (use_inversion_) {
    double pmf = std::exp(-mean);
    double cdf = pmf;
    cdf_.push_back(cdf);
    for (double k = 1; cdf < 1.0 && k < 200; k += 1) {
      pmf *= mean / k;
      const double next = cdf + pmf;
      if (next == cdf) break;
      cdf = next;
      cdf_.push_back(cdf);
    }
  } else {
    const PtrsConstants c = ptrs_constants(mean);
    b_ = c.b;
    a_ = c.a;
    inv_alpha_ = c.inv_alpha;
    v_r_ = c.v_r;
    log_inv_alpha_ = c.log_inv_alpha;
  }
}

double PoissonSampler::operator()(RngStream& rng) const noexcept {
  return use_inversion_ ? invert(rng) : ptrs(rng);
}

double PoissonSampler::invert(RngStream& rng) const noexcept {
  return invert_uniform(rng.uniform());
}

double PoissonSampler::invert_uniform(double u) const noexcept {
  const std::size_t n = cdf_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (u <= cdf_[k]) return static_cast<double>(k);
  }
  return static_cast<double>(n - 1);
}

double PoissonSampler::ptrs(RngStream& rng) const noexcept {
  PtrsConstants c{mean_, b_, a_, inv_alpha_, v_r_, log_inv_alpha_};
  return ptrs_draw(c, rng);
}

double poisson(double mean, RngStream& rng) {
  require(mean > 0.0 && std::isfinite(mean), ErrorCode::kParameter,
          "Poisson mean must be positive and finite");
  if (mean < 10.0) return poisson_search(mean, rng);
  return ptrs_draw(ptrs_constants(mean), rng);
}

double binomial(double n, double p, double q, RngStream& rng) noexcept {
  if (n <= 0 || p <= 0) return 0;
  if (q <= 0) return n;
  if (p > q) return n - binomial(n, q, p, rng);
  if ((n + 1) * p < 11) {
    return binomial_inversion(n, p, q, std::exp(n * std::log1p(-p)), rng);
  }
  return binomial_btrd(n, p, q, rng);
}

Thinner::Thinner(double alpha, double complement) noexcept
    : flip_(alpha > complement),
      p_(flip_ ? complement : alpha),
      q_(flip_ ? alpha : complement),
      log_q_(std::log1p(-p_)),
      ratio_(p_ / q_) {
}

double Thinner::operator()(double x, RngStream& rng) const noexcept {
  double w;
  return thin_with_residual(x, rng, w);
}

double Thinner::thin_with_residual(double x, RngStream& rng,
                                   double& residual) const noexcept {
  const double k = small_side(x, rng, residual);
  return flip_ ? x - k : k;
}

double Thinner::small_side(double x, RngStream& rng,
                           double& residual) const noexcept {
  residual = -1.0;
  if (x <= 0 || p_ <= 0) return 0;
  if ((x + 1) * p_ >= 11) return binomial_btrd(x, p_, q_, rng);
  const double q_pow_x = std::exp(x * log_q_);
  // Inversion, unrolled from binomial_inversion with the ratio cached.
  const double a = (x + 1) * ratio_;
  double r = q_pow_x;
  double u = rng.uniform();
  double k = 0;
  while (u > r) {
    u -= r;
    k += 1;
    const double r1 =
        (a * (k < kTable ? inv_[static_cast<int>(k)] : 1.0 / k) - ratio_) * r;
    if (r1 < std::numeric_limits<double>::epsilon() && r1 < r) {
      return k > x ? x : k;
    }
    r = r1;
  }
  if (k > x) return x;
  if (r >= 0x1.0p-12) residual = u / r;
  return k;
}

}  // namespace inarlab::variates
