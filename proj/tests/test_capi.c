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


// Exercises the C interface from C.

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "inarlab.h"

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

static void test_errors(void) {
  inar_model* m = NULL;
  EXPECT(inar_model_create(1.0, "beta:0", &m) == INAR_ERR_CONFIG);
  EXPECT(m == NULL);
  EXPECT(strlen(inar_last_error()) > 0);
  EXPECT(inar_model_create(-1.0, "degenerate:0.5", &m) == INAR_ERR_PARAMETER);
  EXPECT(inar_model_create(1.0, NULL, &m) == INAR_ERR_PARAMETER);
  EXPECT(strcmp(inar_status_name(INAR_ERR_RANGE), "range") == 0);
  double v = 0;
  EXPECT(inar_fbm_variance_check(1.5, &v) != INAR_OK);
  EXPECT(inar_fbm_variance_check(0.5, &v) == INAR_OK);
  EXPECT(strlen(inar_last_error()) == 0);
  EXPECT(fabs(v - 1.0) < 1e-6);
}

static void test_analytics(void) {
  const double z[2] = {0.0, 0.0};
  double re = 0, im = 0;
  EXPECT(inar_pgf(1.0, 0.5, 2, z, NULL, INAR_PGF_PAIRWISE, &re, &im) == INAR_OK);
  EXPECT(fabs(re - exp(-3.0)) < 1e-15 && im == 0.0);
  EXPECT(inar_pgf(1.0, 0.5, 2, z, NULL, INAR_PGF_PRODUCT, &re, &im) == INAR_OK);
  EXPECT(fabs(re - exp(-3.0)) < 1e-15);

  double pmf[16 * 16];
  double lost = 1;
  EXPECT(inar_pgf_pmf(1.0, 0.5, 1, 15, pmf, &lost) == INAR_OK);
  /* P(X_0 = 0, X_1 = 0) = e^{-2} e^{-1}. */
  EXPECT(fabs(pmf[0] - exp(-3.0)) < 1e-12);
  EXPECT(lost < 1e-6);

  char* json = NULL;
  EXPECT(inar_tail_constants(-0.5, 2.0, 1.0, &json) == INAR_OK);
  EXPECT(strstr(json, "\"K_beta\":3.54490770") != NULL);
  inar_string_free(json);

  inar_model* m = NULL;
  EXPECT(inar_model_create(1.0, "degenerate:0.5", &m) == INAR_OK);
  double p2 = 0, p1 = 0, gap = 1;
  EXPECT(inar_markov_gap(m, &p2, &p1, &gap) == INAR_OK);
  EXPECT(fabs(gap) < 1e-8);
  EXPECT(inar_constants(m, &json) == INAR_OK);
  EXPECT(strstr(json, "\"sigma2\":6") != NULL);
  inar_string_free(json);
  EXPECT(inar_model_describe(m, &json) == INAR_OK);
  EXPECT(strstr(json, "degenerate") != NULL);
  inar_string_free(json);
  inar_model_destroy(m);
}

static void test_sampling(void) {
  inar_model* m = NULL;
  EXPECT(inar_model_create(1.0, "beta:0,0.5", &m) == INAR_OK);
  const double grid[4] = {0.25, 0.5, 0.75, 1.0};
  double out[4 * 50];
  EXPECT(inar_sample_limit(m, "C412a", grid, 4, 50, 7, out) == INAR_OK);
  for (int r = 0; r < 50; ++r) EXPECT(out[4 * r + 3] == 0.0);

  inar_sim_spec spec = {20, 40, grid, 4, NULL, "C412a", 50, 3};
  EXPECT(inar_simulate(m, &spec, out) == INAR_OK);
  for (int r = 0; r < 50; ++r) EXPECT(out[4 * r + 3] == 0.0);
  double again[4 * 50];
  EXPECT(inar_simulate(m, &spec, again) == INAR_OK);
  EXPECT(memcmp(out, again, sizeof out) == 0);

  spec.regime = "T46";
  EXPECT(inar_simulate(m, &spec, out) == INAR_ERR_RANGE);
  spec.regime = NULL;
  spec.centering = "sideways";
  EXPECT(inar_simulate(m, &spec, out) == INAR_ERR_CONFIG);
  inar_model_destroy(m);

  EXPECT(inar_model_create(2.0, "beta:0,-0.5", &m) == INAR_OK);
  spec.centering = "unconditional";
  EXPECT(inar_simulate(m, &spec, out) == INAR_ERR_RANGE);
  EXPECT(strstr(inar_last_error(), "if and only if") != NULL);
  inar_model_destroy(m);
}

static void test_verify(void) {
  const char* cfg =
      "{\"model\": {\"lambda\": 1, \"mixing\": \"degenerate:0.5\"},"
      " \"suites\": [{\"regime\": \"T33\", \"N_ladder\": [20], \"n_ladder\": [100]}],"
      " \"replicates\": 400, \"bootstrap\": 100}";
  EXPECT(inar_config_check(cfg) == INAR_OK);
  EXPECT(inar_config_check("{\"model\": 3}") == INAR_ERR_CONFIG);
  EXPECT(inar_config_check("not json") == INAR_ERR_CONFIG);
  char* report = NULL;
  int pass = -1;
  EXPECT(inar_verify(cfg, NULL, &report, &pass) == INAR_OK);
  EXPECT(pass == 1);
  EXPECT(report != NULL && strstr(report, "\"format_version\":1") != NULL);
  EXPECT(report != NULL && strstr(report, "\"samples\"") != NULL);
  inar_string_free(report);

  inar_model* m = NULL;
  EXPECT(inar_model_create(1.0, "degenerate:0.5", &m) == INAR_OK);
  EXPECT(inar_calibrate(m, "T33", 500, 3, 1, &report) == INAR_OK);
  EXPECT(strstr(report, "\"seeds\":3") != NULL);
  inar_string_free(report);
  inar_model_destroy(m);
}

int main(void) {
  test_errors();
  test_analytics();
  test_sampling();
  test_verify();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
