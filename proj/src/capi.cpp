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


#include "inarlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "inarlab/aggregation.hpp"
#include "inarlab/analytics.hpp"
#include "inarlab/config.hpp"
#include "inarlab/error.hpp"
#include "inarlab/limit_laws.hpp"
#include "inarlab/report.hpp"
#include "inarlab/rng.hpp"
#include "inarlab/verification.hpp"

struct inar_model {
  inarlab::RandomizedModel model;
};

namespace {

using namespace inarlab;

thread_local std::string g_last_error;

template <class F>
inar_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return INAR_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<inar_status>(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return INAR_ERR_CONFIG;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return INAR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return INAR_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorCode::kParameter, std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<double> grid_of(const double* t, std::size_t count) {
  need(t, "t_grid");
  require(count > 0, ErrorCode::kParameter, "t_grid is empty");
  return {t, t + count};
}

}  // namespace

extern "C" {

const char* inar_version(void) { return "1.0.0"; }

const char* inar_last_error(void) { return g_last_error.c_str(); }

const char* inar_status_name(inar_status status) {
  return error_code_name(static_cast<ErrorCode>(status));
}

void inar_string_free(char* s) { std::free(s); }

inar_status inar_model_create(double lambda, const char* mixing_spec, inar_model** out) {
  return guarded([&] {
    need(mixing_spec, "mixing_spec");
    need(out, "out");
    *out = nullptr;
    RandomizedModel m(lambda, parse_mixing_spec(mixing_spec));
    *out = new inar_model{std::move(m)};
  });
}

void inar_model_destroy(inar_model* model) { delete model; }

inar_status inar_model_describe(const inar_model* model, char** out) {
  return guarded([&] {
    need(model, "model");
    need(out, "out");
    *out = dup_string("lambda=" + std::to_string(model->model.lambda) + ", " +
                      model->model.mixing.describe());
  });
}

inar_status inar_pgf(double lambda, double alpha, size_t count, const double* z_re,
                     const double* z_im, inar_pgf_form form, double* out_re, double* out_im) {
  return guarded([&] {
    need(z_re, "z_re");
    need(out_re, "out_re");
    need(out_im, "out_im");
    require(count > 0, ErrorCode::kParameter, "at least one pgf argument is needed");
    std::vector<std::complex<double>> z(count);
    for (std::size_t i = 0; i < count; ++i) z[i] = {z_re[i], z_im ? z_im[i] : 0.0};
    const auto v = joint_pgf(InarModel(lambda, alpha), z,
                             form == INAR_PGF_PRODUCT ? PgfForm::kProductWord
                                                      : PgfForm::kPairwiseFactor);
    *out_re = v.real();
    *out_im = v.imag();
  });
}

inar_status inar_pgf_pmf(double lambda, double alpha, int k, int max_count, double* out,
                         double* truncated_mass) {
  return guarded([&] {
    need(out, "out");
    const PmfArray pmf = pgf_invert_pmf(InarModel(lambda, alpha), k, max_count);
    std::memcpy(out, pmf.values.data(), pmf.values.size() * sizeof(double));
    if (truncated_mass) *truncated_mass = pmf.truncated_mass;
  });
}

inar_status inar_constants(const inar_model* model, char** json) {
  return guarded([&] {
    need(model, "model");
    need(json, "json");
    *json = dup_string(to_json(limit_constants(model->model)).dump());
  });
}

inar_status inar_tail_constants(double beta, double lambda, double psi1, char** json) {
  return guarded([&] {
    need(json, "json");
    *json = dup_string(to_json(tail_constants(beta, lambda, psi1)).dump());
  });
}

inar_status inar_markov_gap(const inar_model* model, double* p_cond2, double* p_cond1,
                            double* gap) {
  return guarded([&] {
    need(model, "model");
    need(gap, "gap");
    const MarkovGapReport r = markov_gap(model->model);
    if (p_cond2) *p_cond2 = r.p_cond2;
    if (p_cond1) *p_cond1 = r.p_cond1;
    *gap = r.gap;
  });
}

inar_status inar_fbm_variance_check(double beta, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = fbm_variance_check(beta);
  });
}

inar_status inar_simulate(const inar_model* model, const inar_sim_spec* spec, double* out) {
  return guarded([&] {
    need(model, "model");
    need(spec, "spec");
    need(out, "out");
    AggregationSpec a;
    a.N = spec->N;
    a.n = spec->n;
    a.t_grid = grid_of(spec->t_grid, spec->t_count);
    a.replicates = spec->replicates;
    std::optional<RegimeScaling> scaling;
    if (spec->regime != nullptr) {
      const Regime r = parse_regime(spec->regime);
      scaling = regime_scaling(r, model->model);
      a.centering = regime_info(r).centering;
    }
    if (spec->centering != nullptr) a.centering = parse_centering_mode(spec->centering);
    if (a.centering == CenteringMode::kUnconditional) (void)unconditional_mean(model->model);
    validate(a);
    SampleMatrix m = simulate_partial_sums(model->model, a, spec->seed, 0).sums;
    if (scaling) m = apply_scaling(*scaling, a.N, a.n, std::move(m));
    std::memcpy(out, m.values.data(), m.values.size() * sizeof(double));
  });
}

inar_status inar_sample_limit(const inar_model* model, const char* regime, const double* t_grid,
                              size_t t_count, long replicates, uint64_t seed, double* out) {
  return guarded([&] {
    need(model, "model");
    need(regime, "regime");
    need(out, "out");
    require(replicates > 0, ErrorCode::kParameter, "replicates must be positive");
    const LimitLaw law = limit_law_for(parse_regime(regime), model->model);
    const LimitPathSampler sampler(law, grid_of(t_grid, t_count));
    RngStream rng(seed, 0);
    for (long r = 0; r < replicates; ++r) {
      const auto path = sampler(rng);
      std::memcpy(out + r * t_count, path.data(), t_count * sizeof(double));
    }
  });
}

inar_status inar_config_check(const char* config_json) {
  return guarded([&] {
    need(config_json, "config_json");
    (void)parse_config_text(config_json);
  });
}

inar_status inar_verify(const char* config_json, const char* regime, char** report_json,
                        int* all_pass) {
  return guarded([&] {
    need(config_json, "config_json");
    need(report_json, "report_json");
    const ExperimentConfig cfg = parse_config_text(config_json);
    std::optional<Regime> only;
    if (regime != nullptr) only = parse_regime(regime);
    VerificationRun run = run_verification(cfg, only);
    for (std::size_t i = 0; i < run.suites.size(); ++i) {
      run.report["suites"][i]["samples"] = to_json(run.suites[i].samples);
      run.report["suites"][i]["t_grid"] = cfg.defaults.t_grid;
    }
    if (all_pass) *all_pass = run.all_pass ? 1 : 0;
    *report_json = dup_string(run.report.dump());
  });
}

inar_status inar_calibrate(const inar_model* model, const char* regime, long replicates,
                           int seeds, uint64_t seed, char** report_json) {
  return guarded([&] {
    need(model, "model");
    need(regime, "regime");
    need(report_json, "report_json");
    SuiteOptions o;
    o.replicates = replicates;
    o.seed = seed;
    const CalibrationReport r = calibrate_suite(model->model, parse_regime(regime), o, seeds);
    *report_json = dup_string(to_json(r).dump());
  });
}

}  // extern "C"
