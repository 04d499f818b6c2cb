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


#include "inarlab/aggregation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <sstream>

#include "inarlab/analytics.hpp"
#include "inarlab/error.hpp"
#include "inarlab/parallel.hpp"
#include "inarlab/transition.hpp"
#include "inarlab/variates.hpp"

namespace inarlab {

namespace {

constexpr int kLanes = 8;

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

double centered(CenteringMode mode, double partial, long m, long n,
                double mean, double total) {
  switch (mode) {
    case CenteringMode::kEmpiricalMean:
      return partial - (static_cast<double>(m) / static_cast<double>(n)) * total;
    default:
      return partial - static_cast<double>(m) * mean;
  }
}

struct Accumulators {
  double* sums;
  double* sq;
  double* quad;
};

void run_replicate(const RandomizedModel& rmodel, const AggregationSpec& spec,
                   const std::vector<long>& marks, long length, double mu,
                   std::uint64_t key, Accumulators acc) {
  const std::size_t G = marks.size();
  std::vector<TransitionSampler> samplers(kLanes, TransitionSampler(rmodel.lambda));
  std::vector<RngStream> rngs;
  rngs.reserve(kLanes);
  std::array<double, kLanes> x{}, sum{}, total{}, mean{};
  std::vector<double> rec(static_cast<std::size_t>(kLanes) * G, 0.0);

  for (long j0 = 0; j0 < spec.N; j0 += kLanes) {
    const int active = static_cast<int>(std::min<long>(kLanes, spec.N - j0));
    rngs.clear();
    for (int l = 0; l < active; ++l) {
      rngs.emplace_back(key, static_cast<std::uint64_t>(j0 + l));
      const Coefficient c = sample_mixing(rmodel.mixing, rngs[l]);
      samplers[l].reset(c, length);
      mean[l] = rmodel.lambda / c.complement;
      x[l] = variates::poisson(mean[l], rngs[l]);
      sum[l] = 0.0;
      total[l] = 0.0;
    }
    if (spec.centering == CenteringMode::kUnconditional) mean.fill(mu);

    std::size_t g = 0;
    while (g < G && marks[g] == 0) {
      for (int l = 0; l < active; ++l) rec[l * G + g] = 0.0;
      ++g;
    }
    for (long k = 1; k <= length; ++k) {
      for (int l = 0; l < active; ++l) {
        x[l] = samplers[l](x[l], rngs[l]);
        sum[l] += x[l];
      }
      if (k == spec.n) total = sum;
      while (g < G && marks[g] == k) {
        for (int l = 0; l < active; ++l) rec[l * G + g] = sum[l];
        ++g;
      }
    }
    // Copies are reduced in index order.
    for (int l = 0; l < active; ++l) {
      for (std::size_t i = 0; i < G; ++i) {
        const double v = centered(spec.centering, rec[l * G + i], marks[i],
                                  spec.n, mean[l], total[l]);
        acc.sums[i] += v;
        const double v2 = v * v;
        acc.sq[i] += v2;
        acc.quad[i] += v2 * v2;
      }
    }
  }
}

bool in_range(const RegimeInfo& info, double beta) {
  const bool lo = info.lo_closed ? beta >= info.beta_lo : beta > info.beta_lo;
  const bool hi = info.hi_closed ? beta <= info.beta_hi : beta < info.beta_hi;
  return lo && hi;
}

std::string range_text(const RegimeInfo& info) {
  std::ostringstream os;
  if (info.beta_lo == info.beta_hi) {
    os << "beta = " << info.beta_lo;
    return os.str();
  }
  os << "beta in " << (info.lo_closed ? '[' : '(') << info.beta_lo << ", ";
  if (std::isinf(info.beta_hi)) {
    os << "inf)";
  } else {
    os << info.beta_hi << (info.hi_closed ? ']' : ')');
  }
  return os.str();
}

}  // namespace

std::string centering_mode_name(CenteringMode c) {
  switch (c) {
    case CenteringMode::kUnconditional: return "unconditional";
    case CenteringMode::kConditional: return "conditional";
    case CenteringMode::kEmpiricalMean: return "empirical_mean";
  }
  return "unknown";
}

CenteringMode parse_centering_mode(std::string_view name) {
  const std::string s = lower(name);
  if (s == "unconditional") return CenteringMode::kUnconditional;
  if (s == "conditional") return CenteringMode::kConditional;
  if (s == "empirical_mean" || s == "empirical") return CenteringMode::kEmpiricalMean;
  fail(ErrorCode::kConfig, "unknown centering mode '" + std::string(name) + "'");
}

void validate(const AggregationSpec& spec) {
  require(spec.N >= 1, ErrorCode::kParameter, "N must be positive");
  require(spec.n >= 1, ErrorCode::kParameter, "n must be positive");
  require(spec.replicates >= 1, ErrorCode::kParameter, "replicates must be positive");
  require(!spec.t_grid.empty(), ErrorCode::kParameter, "t_grid is empty");
  for (std::size_t i = 0; i < spec.t_grid.size(); ++i) {
    const double t = spec.t_grid[i];
    require(std::isfinite(t) && t > 0, ErrorCode::kParameter,
            "t_grid values must be positive and finite");
    require(i == 0 || t > spec.t_grid[i - 1], ErrorCode::kParameter,
            "t_grid must be strictly increasing");
  }
  require(static_cast<double>(spec.n) * spec.t_grid.back() < 4e15,
          ErrorCode::kParameter, "n * max(t_grid) is too large");
}

long path_length(const AggregationSpec& spec) {
  const long last = static_cast<long>(std::floor(spec.n * spec.t_grid.back()));
  return std::max(spec.n, last);
}

std::vector<long> grid_indices(const AggregationSpec& spec) {
  std::vector<long> m;
  m.reserve(spec.t_grid.size());
  for (double t : spec.t_grid) m.push_back(static_cast<long>(std::floor(spec.n * t)));
  return m;
}

std::vector<double> SampleMatrix::column(std::size_t c) const {
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, c);
  return out;
}

double unconditional_mean(const RandomizedModel& rmodel) {
  const Moment m = mixing_moment(rmodel.mixing, 0, 1);
  require(m.finite, ErrorCode::kRange,
          "unconditional centering needs E (1 - alpha)^{-1} < infinity, which "
          "for a mixing density psi(x)(1 - x)^beta holds if and only if beta > 0");
  return rmodel.lambda * m.value;
}

std::vector<double> build_partial_sums(const RandomizedModel& rmodel,
                                       const std::vector<EnsembleCopy>& ensemble,
                                       const AggregationSpec& spec) {
  validate(spec);
  require(ensemble.size() >= static_cast<std::size_t>(spec.N), ErrorCode::kParameter,
          "ensemble has fewer than N copies");
  const auto marks = grid_indices(spec);
  const long length = path_length(spec);
  const double mu = spec.centering == CenteringMode::kUnconditional
                        ? unconditional_mean(rmodel)
                        : 0.0;
  std::vector<double> row(marks.size(), 0.0);
  for (long j = 0; j < spec.N; ++j) {
    const auto& copy = ensemble[j];
    require(copy.path.size() > static_cast<std::size_t>(length), ErrorCode::kParameter,
            "ensemble paths are shorter than floor(n * max t)");
    const double mean = spec.centering == CenteringMode::kUnconditional
                            ? mu
                            : rmodel.lambda / copy.alpha.complement;
    double total = 0;
    for (long k = 1; k <= spec.n; ++k) total += static_cast<double>(copy.path[k]);
    double partial = 0;
    long k = 0;
    for (std::size_t i = 0; i < marks.size(); ++i) {
      for (; k < marks[i]; ++k) partial += static_cast<double>(copy.path[k + 1]);
      row[i] += centered(spec.centering, partial, marks[i], spec.n, mean, total);
    }
  }
  return row;
}

PartialSums simulate_partial_sums(const RandomizedModel& rmodel,
                                  const AggregationSpec& spec, std::uint64_t seed,
                                  std::uint64_t cell) {
  validate(spec);
  const double mu = spec.centering == CenteringMode::kUnconditional
                        ? unconditional_mean(rmodel)
                        : 0.0;
  const auto marks = grid_indices(spec);
  const long length = path_length(spec);
  const std::size_t R = static_cast<std::size_t>(spec.replicates);
  const std::size_t G = marks.size();
  PartialSums out{SampleMatrix(R, G), SampleMatrix(R, G), SampleMatrix(R, G)};
  parallel_for(R, [&](std::size_t r) {
    const std::uint64_t key = derive_key(seed, cell, r);
    run_replicate(rmodel, spec, marks, length, mu, key,
                  {&out.sums.at(r, 0), &out.copy_sq.at(r, 0), &out.copy_quad.at(r, 0)});
  });
  return out;
}

const std::vector<RegimeInfo>& all_regimes() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  using C = CenteringMode;
  using O = IterationOrder;
  static const std::vector<RegimeInfo> table = {
      {Regime::kT33, "T33", O::kEither, C::kUnconditional, -inf, inf, false, false, true},
      {Regime::kT45, "T45", O::kNFirst, C::kConditional, 0.0, 1.0, false, false, false},
      {Regime::kT46, "T46", O::kNFirst, C::kConditional, -1.0, 0.0, false, false, false},
      {Regime::kT47, "T47", O::kNFirst, C::kConditional, 0.0, 0.0, true, true, false},
      {Regime::kT48, "T48", O::knFirst, C::kConditional, -1.0, 1.0, false, false, false},
      {Regime::kT49, "T49", O::kEither, C::kConditional, 1.0, inf, false, true, false},
      {Regime::kT410, "T410", O::kEither, C::kUnconditional, 0.0, 1.0, false, false, false},
      {Regime::kT411, "T411", O::kEither, C::kUnconditional, 1.0, inf, false, true, false},
      {Regime::kC412a, "C412a", O::kNFirst, C::kEmpiricalMean, 0.0, 1.0, false, false, false},
      {Regime::kC412b, "C412b", O::knFirst, C::kEmpiricalMean, -1.0, 1.0, false, false, false},
      {Regime::kC412c, "C412c", O::kEither, C::kEmpiricalMean, 1.0, inf, false, true, false},
  };
  return table;
}

const RegimeInfo& regime_info(Regime r) {
  for (const auto& info : all_regimes()) {
    if (info.regime == r) return info;
  }
  fail(ErrorCode::kInternal, "unknown regime");
}

std::string regime_name(Regime r) { return regime_info(r).name; }

Regime parse_regime(std::string_view name) {
  const std::string s = lower(name);
  for (const auto& info : all_regimes()) {
    if (lower(info.name) == s) return info.regime;
  }
  fail(ErrorCode::kConfig, "unknown regime '" + std::string(name) + "'");
}

std::string order_name(IterationOrder o) {
  switch (o) {
    case IterationOrder::kNFirst: return "N_first";
    case IterationOrder::knFirst: return "n_first";
    case IterationOrder::kEither: return "either";
  }
  return "unknown";
}

IterationOrder parse_order(std::string_view name) {
  const std::string s = lower(name);
  if (name == "N_first" || name == "NFirst") return IterationOrder::kNFirst;
  if (name == "n_first" || name == "nFirst") return IterationOrder::knFirst;
  if (s == "either") return IterationOrder::kEither;
  fail(ErrorCode::kConfig, "unknown iteration order '" + std::string(name) +
                               "' (expected N_first, n_first or either)");
}

double regime_scale(Regime r, double beta, long N, long n) {
  require(N >= 1 && n >= 1, ErrorCode::kParameter, "N and n must be positive");
  const double Nd = static_cast<double>(N), nd = static_cast<double>(n);
  switch (r) {
    case Regime::kT33:
    case Regime::kT49:
    case Regime::kC412c:
      return 1.0 / std::sqrt(nd * Nd);
    case Regime::kT45:
    case Regime::kC412a:
      return std::pow(nd, -1.0 + beta / 2.0) / std::sqrt(Nd);
    case Regime::kT46:
      return std::pow(Nd, -1.0 / (2.0 * (1.0 + beta))) / nd;
    case Regime::kT47:
      require(N >= 2, ErrorCode::kParameter, "the N log N scaling needs N >= 2");
      return 1.0 / (nd * std::sqrt(Nd * std::log(Nd)));
    case Regime::kT48:
    case Regime::kC412b:
      return std::pow(Nd, -1.0 / (1.0 + beta)) / std::sqrt(nd);
    case Regime::kT410:
      return std::pow(Nd, -1.0 / (1.0 + beta)) / nd;
    case Regime::kT411:
      return 1.0 / (nd * std::sqrt(Nd));
  }
  fail(ErrorCode::kInternal, "unknown regime");
}

double RegimeScaling::scale(long N, long n) const {
  return regime_scale(regime, beta, N, n);
}

RegimeScaling regime_scaling(Regime r, const RandomizedModel& rmodel) {
  const RegimeInfo& info = regime_info(r);
  const auto& law = rmodel.mixing;
  if (info.degenerate_only) {
    require(law.is_degenerate(), ErrorCode::kRange,
            std::string(info.name) + " needs a degenerate mixing law, got " + law.describe());
    return {r, info.order, std::numeric_limits<double>::infinity()};
  }
  const double beta = law.tail_exponent().value_or(std::numeric_limits<double>::infinity());
  if (!in_range(info, beta)) {
    std::ostringstream os;
    os << info.name << " needs " << range_text(info) << ", got " << law.describe();
    fail(ErrorCode::kRange, os.str());
  }
  return {r, info.order, beta};
}

SampleMatrix apply_scaling(const RegimeScaling& scaling, long N, long n,
                           SampleMatrix raw) {
  const RegimeInfo& info = regime_info(scaling.regime);
  if (!info.degenerate_only && !in_range(info, scaling.beta)) {
    std::ostringstream os;
    os << info.name << " needs " << range_text(info) << ", got beta = " << scaling.beta;
    fail(ErrorCode::kRange, os.str());
  }
  const double s = scaling.scale(N, n);
  for (double& v : raw.values) v *= s;
  return raw;
}

IteratedResult iterated_experiment(const RandomizedModel& rmodel, Regime regime,
                                   IterationOrder order,
                                   const std::vector<long>& N_ladder,
                                   const std::vector<long>& n_ladder,
                                   const AggregationSpec& base,
                                   const ExperimentOptions& options) {
  require(!N_ladder.empty() && !n_ladder.empty(), ErrorCode::kParameter,
          "ladders must be nonempty");
  require(order != IterationOrder::kEither, ErrorCode::kParameter,
          "request a concrete order, N_first or n_first");
  const RegimeScaling scaling = regime_scaling(regime, rmodel);
  const RegimeInfo& info = regime_info(regime);
  if (info.order != IterationOrder::kEither && info.order != order) {
    fail(ErrorCode::kParameter, std::string(info.name) + " is only established for order " +
                                    order_name(info.order) + ", not " + order_name(order));
  }
  for (std::size_t i = 1; i < N_ladder.size(); ++i) {
    require(N_ladder[i] > N_ladder[i - 1], ErrorCode::kParameter, "N ladder must increase");
  }
  for (std::size_t i = 1; i < n_ladder.size(); ++i) {
    require(n_ladder[i] > n_ladder[i - 1], ErrorCode::kParameter, "n ladder must increase");
  }
  AggregationSpec spec = base;
  spec.centering = info.centering;
  if (spec.centering == CenteringMode::kUnconditional) unconditional_mean(rmodel);

  double steps = 0;
  for (long N : N_ladder) {
    for (long n : n_ladder) {
      spec.N = N;
      spec.n = n;
      validate(spec);
      steps += static_cast<double>(N) * static_cast<double>(path_length(spec)) *
               static_cast<double>(spec.replicates);
    }
  }
  if (steps > options.step_budget) {
    std::ostringstream os;
    os << "experiment needs " << steps << " transition steps, over the budget of "
       << options.step_budget;
    fail(ErrorCode::kBudget, os.str());
  }

  const bool n_outer = order == IterationOrder::kNFirst;
  const auto& outer = n_outer ? n_ladder : N_ladder;
  const auto& inner = n_outer ? N_ladder : n_ladder;
  IteratedResult result{regime, order, {}, true};
  for (std::size_t o = 0; o < outer.size(); ++o) {
    for (std::size_t i = 0; i < inner.size(); ++i) {
      spec.N = n_outer ? inner[i] : outer[o];
      spec.n = n_outer ? outer[o] : inner[i];
      const std::uint64_t cell = (static_cast<std::uint64_t>(n_outer ? 1 : 2) << 56) |
                                 (static_cast<std::uint64_t>(o) << 28) | i;
      PartialSums ps = simulate_partial_sums(rmodel, spec, options.seed, cell);
      ExperimentCell c{spec.N, spec.n, o, i, cell, scaling.scale(spec.N, spec.n),
                       apply_scaling(scaling, spec.N, spec.n, std::move(ps.sums)),
                       std::move(ps.copy_sq)};
      for (double& v : c.copy_sq.values) v *= c.scale * c.scale;
      if (i > 0) {
        const auto& prev = result.cells.back();
        const std::size_t last = spec.t_grid.size() - 1;
        // Mean and variance of cos(X) over replicates.
        auto re_cf = [&](const SampleMatrix& m) {
          double s = 0, s2 = 0;
          for (std::size_t r = 0; r < m.rows; ++r) {
            const double v = std::cos(m.at(r, last));
            s += v;
            s2 += v * v;
          }
          const double R = static_cast<double>(m.rows);
          return std::pair{s / R, std::max(s2 / R - (s / R) * (s / R), 0.0) / R};
        };
        const auto [a, va] = re_cf(prev.scaled);
        const auto [b, vb] = re_cf(c.scaled);
        const double se = std::max(std::sqrt(va + vb), 1e-300);
        c.drift_se = std::abs(a - b) / se;
        if (c.drift_se >= 1.0) result.converged = false;
      }
      result.cells.push_back(std::move(c));
    }
  }
  return result;
}

}  // namespace inarlab
