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

// Exact simulation of INAR(1) paths and randomized ensembles started from the
// stationary law.

#include <cstdint>
#include <vector>

#include "inarlab/model.hpp"
#include "inarlab/rng.hpp"

namespace inarlab {

// Largest count returned through integer interfaces. Internally counts are
// integer-valued doubles, exact up to this bound.
inline constexpr double kMaxExactCount = 9007199254740992.0;  // 2^53

std::int64_t sample_poisson(double mean, RngStream& rng);

std::int64_t binomial_thin(std::int64_t x, double alpha, RngStream& rng);
// Same, with the complement supplied for coefficients close to one.
std::int64_t binomial_thin(std::int64_t x, Coefficient c, RngStream& rng);

// Maximum number of proposals per draw for the General variant.
inline constexpr long kMixingRejectionCap = 1000000;

Coefficient sample_mixing(const MixingLaw& mixing, RngStream& rng);

// X_0 .. X_length. X_0 is drawn from Poisson(lambda / (1 - alpha)).
std::vector<std::int64_t> simulate_inar_path(const InarModel& model,
                                             std::size_t length, RngStream& rng);

struct EnsembleCopy {
  Coefficient alpha;
  std::vector<std::int64_t> path;
};

// Copy j draws its coefficient and then its path from the stream
// (rng.seed(), rng.stream_id() + j). Only the identity of `rng` is used, not
// its position, so copy 0 of a one-copy ensemble with a degenerate law equals
// simulate_inar_path on a fresh stream with the same identity.
std::vector<EnsembleCopy> simulate_randomized_ensemble(
    const RandomizedModel& rmodel, std::size_t n_copies, std::size_t length,
    const RngStream& rng);

}  // namespace inarlab
