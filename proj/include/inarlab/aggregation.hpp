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

// Doubly indexed partial sums of randomized INAR(1) ensembles.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "inarlab/model.hpp"
#include "inarlab/sampling.hpp"

namespace inarlab {

enum class CenteringMode { kUnconditional, kConditional, kEmpiricalMean };

std::string centering_mode_name(CenteringMode c);
CenteringMode parse_centering_mode(std::string_view name);

struct AggregationSpec {
  long N = 1;
  long n = 1;
  std::vector<double> t_grid{0.25, 0.5, 0.75, 1.0};
  CenteringMode centering = CenteringMode::kConditional;
  long replicates = 2000;
};

void validate(const AggregationSpec& spec);
// Number of simulated steps per copy: max(n, floor(n * max t)).
long path_length(const AggregationSpec& spec);
// floor(n t) for each grid point.
std::vector<long> grid_indices(const AggregationSpec& spec);

// Row-major replicate-by-grid matrix.
struct SampleMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  SampleMatrix() = default;
  SampleMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::vector<double> column(std::size_t c) const;
};

// E X_k = lambda E (1 - alpha)^{-1}. Range error when infinite.
double unconditional_mean(const RandomizedModel& rmodel);

// One row of partial sums from an explicit ensemble (paths include X_0).
std::vector<double> build_partial_sums(const RandomizedModel& rmodel,
                                       const std::vector<EnsembleCopy>& ensemble,
                                       const AggregationSpec& spec);

struct PartialSums {
  SampleMatrix sums;
  // Per replicate and grid point, the sum over copies of the squared and
  // fourth-power centered copy sums.
  SampleMatrix copy_sq;
  SampleMatrix copy_quad;
};

// Streams spec.replicates independent ensembles. Replicate r of a cell uses
// the key derive_key(seed, cell, r); copy j of it uses stream (key, j).
PartialSums simulate_partial_sums(const RandomizedModel& rmodel,
                                  const AggregationSpec& spec, std::uint64_t seed,
                                  std::uint64_t cell);

enum class Regime { kT33, kT45, kT46, kT47, kT48, kT49, kT410, kT411, kC412a, kC412b, kC412c };
enum class IterationOrder { kNFirst, knFirst, kEither };

struct RegimeInfo {
  Regime regime;
  const char* name;
  IterationOrder order;
  CenteringMode centering;
  // Admissible beta: (lo, hi) with the given closedness. Laws without a
  // density count as beta = infinity.
  double beta_lo;
  double beta_hi;
  bool lo_closed;
  bool hi_closed;
  bool degenerate_only;
};

const std::vector<RegimeInfo>& all_regimes();
const RegimeInfo& regime_info(Regime r);
std::string regime_name(Regime r);
Regime parse_regime(std::string_view name);
std::string order_name(IterationOrder o);
IterationOrder parse_order(std::string_view name);

struct RegimeScaling {
  Regime regime;
  IterationOrder order;
  double beta;
  double scale(long N, long n) const;
};

// Checks the law against the regime's range of beta.
RegimeScaling regime_scaling(Regime r, const RandomizedModel& rmodel);
// Scale factor by formula, for a given beta.
double regime_scale(Regime r, double beta, long N, long n);

SampleMatrix apply_scaling(const RegimeScaling& scaling, long N, long n,
                           SampleMatrix raw);

struct ExperimentCell {
  long N;
  long n;
  std::size_t outer;
  std::size_t inner;
  std::uint64_t cell_index;
  double scale;
  SampleMatrix scaled;
  SampleMatrix copy_sq;  // scaled by scale^2
  // Drift of Re CF(1) at the last grid point from the previous inner rung,
  // in units of the combined standard error. Zero on the first rung.
  double drift_se = 0.0;
};

struct IteratedResult {
  Regime regime;
  IterationOrder order;
  std::vector<ExperimentCell> cells;
  bool converged;  // every inner drift below one standard error
};

struct ExperimentOptions {
  std::uint64_t seed = 1;
  double step_budget = 2e11;
};

// Order kNFirst fixes n in the outer loop and grows N; knFirst the reverse.
// Cells are keyed by (order, outer, inner).
IteratedResult iterated_experiment(const RandomizedModel& rmodel, Regime regime,
                                   IterationOrder order,
                                   const std::vector<long>& N_ladder,
                                   const std::vector<long>& n_ladder,
                                   const AggregationSpec& base,
                                   const ExperimentOptions& options);

}  // namespace inarlab
