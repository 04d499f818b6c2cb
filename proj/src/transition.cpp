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

#include "inarlab/transition.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "inarlab/error.hpp"

namespace inarlab {

namespace {

double log_factorial(int k) {
  static const auto table = [] {
    std::array<double, TransitionSampler::kRows + 1> t{};
    for (int i = 0; i <= TransitionSampler::kRows; ++i) t[i] = std::lgamma(i + 1.0);
    return t;
  }();
  return table[k];
}

}  // namespace

TransitionSampler::TransitionSampler(double lambda)
    : lambda_(lambda), innovation_(lambda), tabulate_(innovation_.uses_inversion()) {
  if (!tabulate_) return;
  // Poisson pmf up to the point where the remaining tail is below 1e-18.
  double pmf = std::exp(-lambda), cdf = pmf;
  poisson_pmf_.push_back(pmf);
  for (int k = 1; 1.0 - cdf > 1e-18 && k < 200; ++k) {
    pmf *= lambda / k;
    cdf += pmf;
    poisson_pmf_.push_back(pmf);
    if (pmf < 1e-20 && k > lambda) break;
  }
  poisson_cut_ = static_cast<int>(poisson_pmf_.size()) - 1;
  stride_ = kRows + poisson_cut_;
  prob_.assign(static_cast<std::size_t>(kRows) * stride_, 0.0);
  alias_.assign(static_cast<std::size_t>(kRows) * stride_, 0);
  width_.assign(kRows, 0.0);
  wmax_.assign(kRows, 0);
  built_.assign(kRows, 0);
  visits_.assign(kRows, 0);
  scratch_.resize(stride_);
  binom_.resize(kRows + 1);
  small_.resize(stride_);
  large_.resize(stride_);

  const int m = poisson_cut_ + 1;
  innov_prob_.resize(m);
  innov_alias_.resize(m);
  std::copy(poisson_pmf_.begin(), poisson_pmf_.end(), scratch_.begin());
  build_alias(scratch_.data(), m, innov_prob_.data(), innov_alias_.data());
  innov_width_ = m;
  innov_wmax_ = m - 1;
}

void TransitionSampler::reset(Coefficient c, long horizon) {
  c_ = c;
  use_tables_ = tabulate_ && horizon >= kMinHorizon;
  thin_ = variates::Thinner(c.alpha, c.complement);
  std::fill(built_.begin(), built_.end(), 0);
  std::fill(visits_.begin(), visits_.end(), 0);
}

double TransitionSampler::scalar_step(double x, RngStream& rng) const noexcept {
  double w;
  const double survivors = thin_.thin_with_residual(x, rng, w);
  if (!tabulate_) return survivors + innovation_(rng);
  return survivors + innovation_draw(w > 0 ? w : rng.uniform());
}

void TransitionSampler::build_row(int x) {
  double* b = binom_.data();
  std::fill(b, b + x + 1, 0.0);
  if (c_.alpha <= 0.0) {
    b[0] = 1.0;
  } else if (c_.complement <= 0.0) {
    b[x] = 1.0;
  } else {
    // Binomial(x, alpha) pmf by recurrence outward from the mode.
    const int mode = std::min(x, static_cast<int>((x + 1) * c_.alpha));
    const double log_a = std::log(c_.alpha), log_u = std::log(c_.complement);
    b[mode] = std::exp(log_factorial(x) - log_factorial(mode) -
                       log_factorial(x - mode) + mode * log_a + (x - mode) * log_u);
    const double odds = c_.alpha / c_.complement;
    for (int k = mode; k < x && b[k] > 0.0; ++k) {
      b[k + 1] = b[k] * (x - k) / (k + 1.0) * odds;
    }
    for (int k = mode; k > 0 && b[k] > 0.0; --k) {
      b[k - 1] = b[k] * k / ((x - k + 1.0) * odds);
    }
  }
  const int base = x * stride_;
  const int m = x + poisson_cut_ + 1;
  double* p = scratch_.data();
  std::fill(p, p + m, 0.0);
  for (int k = 0; k <= x; ++k) {
    if (b[k] == 0.0) continue;
    for (int j = 0; j <= poisson_cut_; ++j) p[k + j] += b[k] * poisson_pmf_[j];
  }
  build_alias(p, m, &prob_[base], &alias_[base]);
  width_[x] = m;
  wmax_[x] = m - 1;
  built_[x] = 1;
}

void TransitionSampler::build_alias(double* p, int m, double* prob,
                                    std::int32_t* alias) {
  double total = 0;
  for (int i = 0; i < m; ++i) total += p[i];
  const double scale = m / total;
  int ns = 0, nl = 0;
  for (int i = 0; i < m; ++i) {
    p[i] *= scale;
    if (p[i] < 1.0) {
      small_[ns++] = i;
    } else {
      large_[nl++] = i;
    }
  }
  while (ns > 0 && nl > 0) {
    const int s = small_[--ns];
    const int l = large_[nl - 1];
    prob[s] = p[s];
    alias[s] = l;
    p[l] -= 1.0 - p[s];
    if (p[l] < 1.0) {
      --nl;
      small_[ns++] = l;
    }
  }
  while (nl > 0) {
    const int l = large_[--nl];
    prob[l] = 1.0;
    alias[l] = l;
  }
  while (ns > 0) {
    const int s = small_[--ns];
    prob[s] = 1.0;
    alias[s] = s;
  }
}

}  // namespace inarlab
