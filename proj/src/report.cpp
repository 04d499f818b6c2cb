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


#include "inarlab/report.hpp"

#include <chrono>

#include "inarlab/aggregation.hpp"

namespace inarlab {

using nlohmann::json;

namespace {

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const LimitConstants& c) {
  return {{"beta", optional_json(c.beta)},         {"psi1", optional_json(c.psi1)},
          {"c_fbm", optional_json(c.c_fbm)},       {"K_beta", optional_json(c.K_beta)},
          {"k_beta", optional_json(c.k_beta)},     {"sigma2", optional_json(c.sigma2)},
          {"w_var_43", optional_json(c.w_var_43)}, {"w_var_411", optional_json(c.w_var_411)},
          {"omega_scale", optional_json(c.omega_scale)}};
}

json to_json(const MarkovGapReport& r) {
  return {{"p_cond2", r.p_cond2}, {"p_cond1", r.p_cond1}, {"gap", r.gap}};
}

json to_json(const CfReport& r) {
  json cells = json::array();
  std::size_t k = 0;
  for (double t : r.t_grid) {
    for (double theta : r.theta_grid) {
      json cell = {{"t", t}, {"theta", theta}, {"empirical", complex_json(r.empirical[k])},
                   {"se", r.se[k]}};
      if (k < r.theoretical.size()) cell["theoretical"] = complex_json(r.theoretical[k]);
      cells.push_back(cell);
      ++k;
    }
  }
  return {{"cells", cells},         {"cell_count", r.cells}, {"gate", r.gate},
          {"max_abs_dev", r.max_abs_dev}, {"max_z", r.max_z}, {"pass", r.pass}};
}

json to_json(const CovReport& r) {
  json pairs = json::array();
  for (std::size_t p = 0; p < r.pairs.size(); ++p) {
    pairs.push_back({{"s", r.pairs[p].s},
                     {"t", r.pairs[p].t},
                     {"empirical", r.empirical[p]},
                     {"theoretical", r.theoretical[p]},
                     {"se", r.se[p]}});
  }
  return {{"pairs", pairs},
          {"gate", r.gate},
          {"max_rel_dev", r.max_rel_dev},
          {"max_z", r.max_z},
          {"min_eigenvalue", r.min_eigenvalue},
          {"psd", r.psd},
          {"pass", r.pass}};
}

json to_json(const KsReport& r) {
  return {{"distance", r.distance},
          {"critical", r.critical},
          {"reference_size", r.reference_size},
          {"pass", r.pass}};
}

json to_json(const SampleMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const SuiteReport& r, bool with_samples) {
  json j = {{"regime", regime_name(r.regime)},
            {"order", order_name(r.order)},
            {"centering", centering_mode_name(regime_info(r.regime).centering)},
            {"target", r.target},
            {"N", r.N},
            {"n", r.n},
            {"replicates", r.replicates},
            {"converged", r.converged},
            {"seconds", r.seconds},
            {"pass", r.pass},
            {"status", r.status}};
  const auto& e = r.evaluation;
  if (e.cov) j["covariance"] = to_json(*e.cov);
  if (e.cf) j["characteristic_function"] = to_json(*e.cf);
  if (e.ks) j["kolmogorov_smirnov"] = to_json(*e.ks);
  if (e.bridge_zero) j["bridge_zero_at_1"] = *e.bridge_zero;
  if (!r.pooled_variance.empty()) j["pooled_variance"] = r.pooled_variance;
  if (with_samples) j["samples"] = to_json(r.samples);
  return j;
}

json to_json(const CalibrationReport& r) {
  return {{"regime", regime_name(r.regime)}, {"target", r.target},
          {"seeds", r.seeds},                {"passed_own", r.passed_own},
          {"failed_distorted", r.failed_distorted}, {"distortion", r.distortion},
          {"pass", r.pass}};
}

json rng_provenance(std::uint64_t seed) {
  return {{"generator", "xoshiro256++"},
          {"stream_seeding", "Philox4x32-10"},
          {"seed", seed},
          {"replicate_key", "derive_key(seed, cell, replicate)"},
          {"copy_stream", "(replicate_key, copy index)"}};
}

VerificationRun run_verification(const ExperimentConfig& config, std::optional<Regime> only) {
  const auto start = std::chrono::steady_clock::now();
  const RandomizedModel rmodel = config.model();
  std::vector<SuiteRequest> requests;
  for (const auto& s : config.suites) {
    if (!only || s.regime == *only) requests.push_back(s);
  }
  if (only && requests.empty()) {
    SuiteRequest s;
    s.regime = *only;
    const IterationOrder o = regime_info(*only).order;
    s.order = o == IterationOrder::kEither ? IterationOrder::kNFirst : o;
    s.N_ladder = config.defaults.N_ladder;
    s.n_ladder = config.defaults.n_ladder;
    requests.push_back(s);
  }
  // Range checks for every suite before any simulation.
  for (const auto& s : requests) (void)limit_law_for(s.regime, rmodel);

  VerificationRun run;
  run.all_pass = !requests.empty();
  json suites = json::array();
  for (const auto& s : requests) {
    SuiteReport rep = regime_suite(rmodel, s.regime, config.options_for(s));
    run.all_pass = run.all_pass && rep.pass;
    suites.push_back(to_json(rep));
    run.suites.push_back(std::move(rep));
  }
  run.report = {
      {"format_version", kFormatVersion},
      {"config", config.source},
      {"model", {{"lambda", config.lambda}, {"mixing", config.mixing.describe()}}},
      {"suites", suites},
      {"all_pass", run.all_pass},
      {"wall_clock_seconds",
       std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
      {"rng", rng_provenance(config.defaults.seed)}};
  return run;
}

}  // namespace inarlab
