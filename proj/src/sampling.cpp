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

#include "inarlab/sampling.hpp"

#include <cmath>
#include <sstream>
#include <variant>

#include "inarlab/error.hpp"
#include "inarlab/parallel.hpp"
#include "inarlab/variates.hpp"

namespace inarlab {

namespace {

std::int64_t to_count(double v) {
  if (!(v <= kMaxExactCount)) {
    std::ostringstream os;
    os << "count " << v << " exceeds the exactly representable range 2^53";
    fail(ErrorCode::kRange, os.str());
  }
  return static_cast<std::int64_t>(v);
}

Coefficient sample_general(const mixing::General& g, RngStream& rng) {
  const double inv = 1.0 / (g.beta + 1.0);
  for (long i = 0; i < kMixingRejectionCap; ++i) {
    // Proposal Beta(1, beta + 1): the complement is V^(1 / (beta + 1)).
    const double u = std::pow(rng.uniform(), inv);
    const double w = rng.uniform();
    if (!(u > 0.0) || !(u < 1.0)) continue;  // underflow for beta near -1
    const double x = 1.0 - u;
    const double psi = g.psi(x, u);
    if (psi > g.psi_sup) {
      std::ostringstream os;
      os << "psi(" << x << ") = " << psi << " exceeds the envelope " << g.psi_sup;
      fail(ErrorCode::kSampling, os.str());
    }
    if (w * g.psi_sup <= psi) return {x, u};
  }
  fail(ErrorCode::kSampling,
       "rejection sampler for the mixing law exceeded its proposal cap; "
       "psi_sup is probably far too large");
}

}  // namespace

std::int64_t sample_poisson(double mean, RngStream& rng) {
  return to_count(variates::poisson(mean, rng));
}

std::int64_t binomial_thin(std::int64_t x, double alpha, RngStream& rng) {
  require(alpha >= 0 && alpha <= 1, ErrorCode::kParameter,
          "thinning probability must lie in [0, 1]");
  return binomial_thin(x, Coefficient{alpha, 1.0 - alpha}, rng);
}

std::int64_t binomial_thin(std::int64_t x, Coefficient c, RngStream& rng) {
  require(c.alpha >= 0 && c.alpha <= 1 && c.complement >= 0 &&
              c.complement <= 1,
          ErrorCode::kParameter, "thinning probability must lie in [0, 1]");
  require(x >= 0, ErrorCode::kParameter, "cannot thin a negative count");
  require(static_cast<double>(x) <= kMaxExactCount, ErrorCode::kRange,
          "count exceeds 2^53");
  return static_cast<std::int64_t>(
      variates::binomial(static_cast<double>(x), c.alpha, c.complement, rng));
}

Coefficient sample_mixing(const MixingLaw& mixing, RngStream& rng) {
  const auto& v = mixing.variant();
  if (const auto* d = std::get_if<mixing::Degenerate>(&v)) {
    return Coefficient::from_alpha(d->alpha0);
  }
  if (const auto* b = std::get_if<mixing::Beta>(&v)) {
    for (long i = 0; i < kMixingRejectionCap; ++i) {
      const auto draw = variates::beta(b->a + 1.0, b->beta + 1.0, rng);
      // A zero complement is an underflow for beta near -1.
      if (draw.complement > 0.0) return {draw.value, draw.complement};
    }
    fail(ErrorCode::kSampling, "Beta mixing draws keep underflowing to alpha = 1");
  }
  if (const auto* g = std::get_if<mixing::General>(&v)) {
    return sample_general(*g, rng);
  }
  const auto& at = std::get<mixing::Atoms>(v);
  if (at.values.size() == 1) return Coefficient::from_alpha(at.values[0]);
  double u = rng.uniform();
  for (std::size_t i = 0; i + 1 < at.values.size(); ++i) {
    if (u <= at.weights[i]) return Coefficient::from_alpha(at.values[i]);
    u -= at.weights[i];
  }
  return Coefficient::from_alpha(at.values.back());
}

std::vector<std::int64_t> simulate_inar_path(const InarModel& model,
                                             std::size_t length,
                                             RngStream& rng) {
  require(length >= 1, ErrorCode::kParameter, "path length must be at least 1");
  const variates::Thinner thin(model.alpha(), model.complement());
  const variates::PoissonSampler innovation(model.lambda());
  std::vector<std::int64_t> path(length + 1);
  double x = variates::poisson(model.stationary_mean(), rng);
  path[0] = to_count(x);
  for (std::size_t k = 1; k <= length; ++k) {
    x = thin(x, rng) + innovation(rng);
    path[k] = to_count(x);
  }
  return path;
}

std::vector<EnsembleCopy> simulate_randomized_ensemble(
    const RandomizedModel& rmodel, std::size_t n_copies, std::size_t length,
    const RngStream& rng) {
  require(n_copies >= 1, ErrorCode::kParameter, "need at least one copy");
  require(length >= 1, ErrorCode::kParameter, "path length must be at least 1");
  std::vector<EnsembleCopy> out(n_copies);
  parallel_for(n_copies, [&](std::size_t j) {
    RngStream stream(rng.seed(), rng.stream_id() + j);
    const Coefficient c = sample_mixing(rmodel.mixing, stream);
    out[j].alpha = c;
    out[j].path = simulate_inar_path(InarModel(rmodel.lambda, c), length, stream);
  });
  return out;
}

}  // namespace inarlab
