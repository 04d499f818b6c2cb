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

// Closed-form and quadrature-based quantities for INAR(1) with Poisson
// innovations and its randomized-coefficient version.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "inarlab/model.hpp"

namespace inarlab {

enum class PgfForm { kPairwiseFactor, kProductWord };

// E z_0^{X_0} ... z_k^{X_k} for the stationary chain. |z_i| <= 1.
std::complex<double> joint_pgf(const InarModel& model,
                               const std::vector<std::complex<double>>& z,
                               PgfForm form);

// Dense pmf of (X_0, ..., X_k) on {0..max_count}^{k+1}, row-major with the
// last coordinate fastest.
struct PmfArray {
  int dims = 0;
  int side = 0;  // max_count + 1
  std::vector<double> values;
  double truncated_mass = 0;  // bound on the mass outside the grid

  double at(const std::vector<int>& index) const;
};

PmfArray pgf_invert_pmf(const InarModel& model, int k, int max_count);

enum class Centering { kDeterministic, kConditional, kUnconditional };

std::string centering_name(Centering c);

// Cov(X_0, X_k) for the deterministic model.
double autocov(const InarModel& model, int k);
// Covariance of the centered randomized process. kDeterministic is not valid
// here; kConditional needs E 1/(1-alpha) finite, kUnconditional needs
// E 1/(1-alpha)^2 finite.
double autocov(const RandomizedModel& rmodel, int k, Centering centering);

struct Moment {
  bool finite;
  double value;  // +infinity when not finite
};

// E alpha^k (1 - alpha)^{-ell}.
Moment mixing_moment(const MixingLaw& mixing, int k, int ell);

// Limit constants; each is present only on its range of beta.
struct LimitConstants {
  std::optional<double> beta;
  std::optional<double> psi1;
  std::optional<double> c_fbm;      // beta in (0, 1)
  std::optional<double> K_beta;     // beta in (-1, 0)
  std::optional<double> k_beta;     // beta in (-1, 1)
  std::optional<double> sigma2;     // beta > 1, or no density
  std::optional<double> w_var_43;   // beta = 0
  std::optional<double> w_var_411;  // beta > 1, or no density
  // Real factor of omega_beta: psi1 Gamma(1-beta) lambda^{1+beta} /
  // (-beta (1+beta)). beta in (0, 1).
  std::optional<double> omega_scale;

  // omega_beta(theta); throws ErrorCode::kRange when absent.
  std::complex<double> omega(double theta) const;
  // Named access that throws ErrorCode::kRange when the constant is not
  // defined for this mixing law.
  double get(const std::string& name) const;
};

LimitConstants limit_constants(const RandomizedModel& rmodel);
// The constants fixed by (beta, lambda, psi1) alone; sigma2 and w_var_411
// need the whole mixing law and are left empty.
LimitConstants tail_constants(double beta, double lambda, double psi1);

// (1/(1-alpha)) sum_{k=1}^{n1} sum_{l=1}^{n2} alpha^{|k-l|}, n1 <= n2.
double double_geom_sum(double alpha, long n1, long n2);

struct SequenceWithLimit {
  std::vector<double> values;
  double limit;
};

// k^beta E(alpha^k / (1 - alpha)) for k in k_list, and psi1 Gamma(beta).
SequenceWithLimit regvar_limit(const MixingLaw& mixing, double lambda,
                               const std::vector<long>& k_list);

struct MarkovGapReport {
  double p_cond2;  // P(X_2 = 0 | X_1 = 1, X_0 = 0)
  double p_cond1;  // P(X_2 = 0 | X_1 = 1)
  double gap;
};

MarkovGapReport markov_gap(const RandomizedModel& rmodel);

double fbm_variance_check(double beta);

// x^{(1+beta)/2} P(lambda (1+alpha)/(1-alpha)^2 > x), and
// psi1 (2 lambda)^{(1+beta)/2} / (1 + beta).
SequenceWithLimit tail_asymptotic(const MixingLaw& mixing, double lambda,
                                  const std::vector<double>& x_list);

// E h(alpha) (1 - alpha)^extra_power, with h receiving (x, 1 - x). For
// laws with a density the power is folded into the endpoint weight, so it
// may be as low as -(beta + 1) exclusive.
double mixing_expectation(const MixingLaw& mixing,
                          const std::function<double(double, double)>& h,
                          double extra_power = 0.0, double tol = 1e-13);

}  // namespace inarlab
