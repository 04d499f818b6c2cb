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


#ifndef INARLAB_H_
#define INARLAB_H_

/* C interface to inarlab: randomized INAR(1) simulation, analytics, limit
 * laws and verification suites. Every function returning inar_status leaves
 * a message for inar_last_error() on failure. Strings returned through char**
 * are owned by the caller and released with inar_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define INARLAB_API __declspec(dllexport)
#else
#define INARLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum inar_status {
  INAR_OK = 0,
  INAR_ERR_PARAMETER = 1,
  INAR_ERR_DOMAIN = 2,
  INAR_ERR_RANGE = 3,
  INAR_ERR_NUMERIC = 4,
  INAR_ERR_SAMPLING = 5,
  INAR_ERR_TRUNCATION = 6,
  INAR_ERR_STATISTICS = 7,
  INAR_ERR_CAPABILITY = 8,
  INAR_ERR_BUDGET = 9,
  INAR_ERR_CONFIG = 10,
  INAR_ERR_IO = 11,
  INAR_ERR_INTERNAL = 12
} inar_status;

typedef enum inar_pgf_form {
  INAR_PGF_PAIRWISE = 0,
  INAR_PGF_PRODUCT = 1
} inar_pgf_form;

/* Poisson innovation mean and the law of the thinning coefficient. */
typedef struct inar_model inar_model;

typedef struct inar_sim_spec {
  long N;               /* copies */
  long n;               /* time scale */
  const double* t_grid; /* positive, strictly increasing */
  size_t t_count;
  const char* centering; /* "unconditional", "conditional", "empirical_mean" or NULL */
  const char* regime;    /* scale for this regime, or NULL for raw sums */
  long replicates;
  uint64_t seed;
} inar_sim_spec;

INARLAB_API const char* inar_version(void);
/* Message of the last failure on this thread; empty when none. */
INARLAB_API const char* inar_last_error(void);
INARLAB_API const char* inar_status_name(inar_status status);
INARLAB_API void inar_string_free(char* s);

/* mixing_spec: "degenerate:ALPHA", "beta:A,BETA" or "atoms:V@W,V@W,...". */
INARLAB_API inar_status inar_model_create(double lambda, const char* mixing_spec,
                                          inar_model** out);
INARLAB_API void inar_model_destroy(inar_model* model);
INARLAB_API inar_status inar_model_describe(const inar_model* model, char** out);

/* E prod z_i^{X_i} over X_0..X_{count-1} of the stationary chain. */
INARLAB_API inar_status inar_pgf(double lambda, double alpha, size_t count,
                                 const double* z_re, const double* z_im, inar_pgf_form form,
                                 double* out_re, double* out_im);
/* Joint pmf of (X_0..X_k) on {0..max_count}^{k+1}, last index fastest. */
INARLAB_API inar_status inar_pgf_pmf(double lambda, double alpha, int k, int max_count,
                                     double* out, double* truncated_mass);

/* JSON object of the limit constants; absent ones are null. */
INARLAB_API inar_status inar_constants(const inar_model* model, char** json);
INARLAB_API inar_status inar_tail_constants(double beta, double lambda, double psi1,
                                            char** json);
INARLAB_API inar_status inar_markov_gap(const inar_model* model, double* p_cond2,
                                        double* p_cond1, double* gap);
INARLAB_API inar_status inar_fbm_variance_check(double beta, double* out);

/* Writes replicates x t_count values, row-major. */
INARLAB_API inar_status inar_simulate(const inar_model* model, const inar_sim_spec* spec,
                                      double* out);
INARLAB_API inar_status inar_sample_limit(const inar_model* model, const char* regime,
                                          const double* t_grid, size_t t_count,
                                          long replicates, uint64_t seed, double* out);

/* Validates a JSON configuration without running it. */
INARLAB_API inar_status inar_config_check(const char* config_json);
/* Runs the configured suites (all, or one regime). The report carries each
 * suite's scaled samples under "samples". */
INARLAB_API inar_status inar_verify(const char* config_json, const char* regime,
                                    char** report_json, int* all_pass);
INARLAB_API inar_status inar_calibrate(const inar_model* model, const char* regime,
                                       long replicates, int seeds, uint64_t seed,
                                       char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* INARLAB_H_ */
