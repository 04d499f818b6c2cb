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

// Hot-path INAR(1) transition sampler used by the aggregation kernels.
//
// For a state x below kRows that has been visited often enough, the joint law
// of the next state, Binomial(x, alpha) * Poisson(lambda), is tabulated for
// Walker's alias method, so a step costs one uniform and two table reads with
// no data-dependent branch. The support is cut where the Poisson tail drops
// below 1e-18, beneath double resolution. All other steps use exact thinning
// followed by an innovation draw; when thinning is done by inversion, the
// uniform left inside the selected cell is recycled for the innovation.
//
// Steps of different copies are independent, so callers interleave several
// TransitionSampler objects to overlap their latency chains.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "inarlab/model.hpp"
#include "inarlab/rng.hpp"
#include "inarlab/variates.hpp"

namespace inarlab {

// One INAR(1) transition x -> alpha o x + Poisson(lambda) for a single copy.
// Small states that recur get a Walker alias table of the joint law of the
// next state, so a step costs one uniform. Building a row costs about as
// much as a few dozen scalar steps, so copies with a short horizon skip it.
class TransitionSampler {
 public:
  static constexpr int kRows = 64;
  static constexpr int kBuildAfter = 3;
  static constexpr long kMinHorizon = 256;

  explicit TransitionSampler(double lambda);

  // Start a new copy with coefficient c that will run for `horizon` steps.
  // Keeps the allocations.
  void reset(Coefficient c, long horizon = kMinHorizon);

  double lambda() const noexcept { return lambda_; }

  double operator()(double x, RngStream& rng) noexcept {
    if (x < kRows && use_tables_) {
      const int xi = static_cast<int>(x);
      if (built_[xi]) {
        const int base = xi * stride_;
        return alias_draw(&prob_[base], &alias_[base], width_[xi], wmax_[xi],
                          rng.uniform());
      }
      if (++visits_[xi] >= kBuildAfter) build_row(xi);
    }
    return scalar_step(x, rng);
  }

  // Exact step without the per-coefficient tables.
  double scalar_step(double x, RngStream& rng) const noexcept;

 private:
  static double alias_draw(const double* prob, const std::int32_t* alias,
                           double width, int wmax, double u) noexcept {
    const double v = u * width;
    // u * width can round up to width when u is the largest uniform.
    const int c = std::min(static_cast<int>(v), wmax);
    return v - c < prob[c] ? c : alias[c];
  }
  double innovation_draw(double u) const noexcept {
    return alias_draw(innov_prob_.data(), innov_alias_.data(), innov_width_,
                      innov_wmax_, u);
  }
  void build_row(int x);
  // Vose's method on m weights; overwrites w.
  void build_alias(double* w, int m, double* prob, std::int32_t* alias);

  double lambda_;
  Coefficient c_{0.5, 0.5};
  variates::PoissonSampler innovation_;
  variates::Thinner thin_{0.5, 0.5};
  bool tabulate_;
  bool use_tables_ = false;
  int poisson_cut_ = 0;  // innovations above this are below double resolution
  int stride_ = 0;
  std::vector<double> poisson_pmf_;
  std::vector<double> innov_prob_;
  std::vector<std::int32_t> innov_alias_;
  double innov_width_ = 0;
  int innov_wmax_ = 0;
  std::vector<double> prob_;
  std::vector<std::int32_t> alias_;
  std::vector<double> width_;
  std::vector<int> wmax_;
  std::vector<std::uint8_t> built_;
  std::vector<std::uint8_t> visits_;
  std::vector<double> scratch_;
  std::vector<double> binom_;
  std::vector<std::int32_t> small_, large_;
};

}  // namespace inarlab
