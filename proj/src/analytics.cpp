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

#include "inarlab/analytics.hpp"

#include <fftw3.h>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <variant>

#include "inarlab/error.hpp"
#include "inarlab/numerics.hpp"

namespace inarlab {

namespace {

using cplx = std::complex<double>;

// The FFTW planner is not reentrant.
std::mutex& fftw_planner_mutex() {
  static std::mutex mu;
  return mu;
}

double require_beta(const MixingLaw& mixing, const char* op) {
  const auto b = mixing.tail_exponent();
  if (!b) {
    fail(ErrorCode::kRange, std::string(op) + " needs a mixing law with a density; got " +
                                mixing.describe());
  }
  return *b;
}

// x^k accurate when x is close to one.
double power_near_one(double x, double u, int k) {
  if (k == 0) return 1.0;
  return u < 0.5 ? std::exp(k * std::log1p(-u)) : std::pow(x, k);
}

}  // namespace

std::complex<double> joint_pgf(const InarModel& model, const std::vector<cplx>& z,
                               PgfForm form) {
  require(!z.empty(), ErrorCode::kParameter, "joint_pgf needs at least one argument");
  for (const cplx& zi : z) {
    if (std::abs(zi) > 1.0 + 1e-12) {
      std::ostringstream os;
      os << "joint_pgf argument " << zi << " lies outside the closed unit disc";
      fail(ErrorCode::kDomain, os.str());
    }
  }
  const double alpha = model.alpha(), u = model.complement();
  const std::size_t k = z.size() - 1;
  cplx sum = 0;
  if (form == PgfForm::kPairwiseFactor) {
    for (std::size_t i = 0; i <= k; ++i) {
      sum += z[i] - 1.0;
      cplx inner = 1.0;  // z_{i+1} ... z_{j-1}
      double apow = 1.0;
      for (std::size_t j = i + 1; j <= k; ++j) {
        apow *= alpha;
        sum += apow * (z[i] - 1.0) * inner * (z[j] - 1.0);
        inner *= z[j];
      }
    }
    return std::exp(model.lambda() / u * sum);
  }
  for (std::size_t i = 0; i <= k; ++i) {
    cplx word = 1.0;  // z_i ... z_j
    double apow = 1.0;
    for (std::size_t j = i; j <= k; ++j) {
      word *= z[j];
      if (j > i) apow *= alpha;
      double weight;
      if (i == 0 && j == k) {
        weight = 1.0 / u;
      } else if (i == 0 || j == k) {
        weight = 1.0;
      } else {
        weight = u;
      }
      sum += weight * apow * (word - 1.0);
    }
  }
  return std::exp(model.lambda() * sum);
}

double PmfArray::at(const std::vector<int>& index) const {
  require(static_cast<int>(index.size()) == dims, ErrorCode::kParameter,
          "pmf index has the wrong dimension");
  std::size_t flat = 0;
  for (int i : index) {
    require(i >= 0 && i < side, ErrorCode::kParameter, "pmf index out of range");
    flat = flat * side + i;
  }
  return values[flat];
}

PmfArray pgf_invert_pmf(const InarModel& model, int k, int max_count) {
  require(k >= 0 && k <= 3, ErrorCode::kParameter,
          "pmf inversion supports k in 0..3");
  require(max_count >= 1 && max_count <= 64, ErrorCode::kParameter,
          "max_count must lie in 1..64");
  const int d = k + 1, side = max_count + 1;
  // Every coordinate is Poisson(lambda / (1 - alpha)); the mass outside the
  // grid is at most d times one marginal tail.
  const double tail = boost::math::gamma_p(max_count + 1.0, model.stationary_mean());
  const double truncated = d * tail;
  if (truncated > 1e-6) {
    std::ostringstream os;
    os << "mass beyond max_count=" << max_count << " is up to " << truncated
       << " (> 1e-6); raise max_count";
    fail(ErrorCode::kTruncation, os.str());
  }
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= side;

  fftw_complex* buf = fftw_alloc_complex(total);
  std::vector<cplx> roots(side);
  for (int m = 0; m < side; ++m) {
    roots[m] = std::polar(1.0, 2.0 * std::numbers::pi * m / side);
  }
  std::vector<int> idx(d, 0);
  std::vector<cplx> z(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int i = d - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(rest % side);
      rest /= side;
      z[i] = roots[idx[i]];
    }
    const cplx f = joint_pgf(model, z, PgfForm::kProductWord);
    buf[flat][0] = f.real();
    buf[flat][1] = f.imag();
  }
  std::vector<int> n(d, side);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft(d, n.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  PmfArray out;
  out.dims = d;
  out.side = side;
  out.truncated_mass = truncated;
  out.values.resize(total);
  double sum = 0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    double p = buf[flat][0] / static_cast<double>(total);
    if (p < 0) {
      if (p < -1e-10) {
        fftw_free(buf);
        std::ostringstream os;
        os << "pmf inversion produced " << p << " < -1e-10";
        fail(ErrorCode::kNumeric, os.str());
      }
      p = 0;
    }
    out.values[flat] = p;
    sum += p;
  }
  fftw_free(buf);
  for (double& p : out.values) p /= sum;
  return out;
}

std::string centering_name(Centering c) {
  switch (c) {
    case Centering::kDeterministic: return "deterministic";
    case Centering::kConditional: return "conditional";
    case Centering::kUnconditional: return "unconditional";
  }
  return "unknown";
}

double autocov(const InarModel& model, int k) {
  require(k >= 0, ErrorCode::kParameter, "lag must be nonnegative");
  return model.lambda() * std::pow(model.alpha(), k) / model.complement();
}

double autocov(const RandomizedModel& rmodel, int k, Centering centering) {
  require(k >= 0, ErrorCode::kParameter, "lag must be nonnegative");
  require(centering != Centering::kDeterministic, ErrorCode::kParameter,
          "deterministic centering applies to InarModel, not to a randomized model");
  const Moment m = mixing_moment(rmodel.mixing, k, 1);
  if (!m.finite) {
    fail(ErrorCode::kRange,
         "E alpha^k / (1 - alpha) is infinite for " + rmodel.mixing.describe() +
             "; conditional centering needs beta > 0");
  }
  double cov = rmodel.lambda * m.value;
  if (centering == Centering::kUnconditional) {
    const Moment m2 = mixing_moment(rmodel.mixing, 0, 2);
    if (!m2.finite) {
      fail(ErrorCode::kRange,
           "Var 1/(1 - alpha) is infinite for " + rmodel.mixing.describe() +
               "; unconditional centering needs beta > 1");
    }
    const double m1 = mixing_moment(rmodel.mixing, 0, 1).value;
    cov += rmodel.lambda * rmodel.lambda * (m2.value - m1 * m1);
  }
  return cov;
}

double mixing_expectation(const MixingLaw& mixing,
                          const std::function<double(double, double)>& h,
                          double extra_power, double tol) {
  const auto& v = mixing.variant();
  if (const auto* d = std::get_if<mixing::Degenerate>(&v)) {
    const double u = 1.0 - d->alpha0;
    return h(d->alpha0, u) * std::pow(u, extra_power);
  }
  if (const auto* at = std::get_if<mixing::Atoms>(&v)) {
    double s = 0;
    for (std::size_t i = 0; i < at->values.size(); ++i) {
      const double u = 1.0 - at->values[i];
      s += at->weights[i] * h(at->values[i], u) * std::pow(u, extra_power);
    }
    return s;
  }
  const double beta = *mixing.tail_exponent();
  require(beta + extra_power > -1.0, ErrorCode::kRange,
          "expectation is infinite: endpoint weight is not integrable");
  return numerics::integrate_unit(
      [&](double x, double u) { return mixing.psi(x, u) * h(x, u); },
      beta + extra_power, tol);
}

Moment mixing_moment(const MixingLaw& mixing, int k, int ell) {
  require(k >= 0 && ell >= 0, ErrorCode::kParameter,
          "moment orders must be nonnegative");
  if (!mixing.inverse_moment_finite(ell)) {
    return {false, std::numeric_limits<double>::infinity()};
  }
  if (const auto* b = std::get_if<mixing::Beta>(&mixing.variant())) {
    const double a = b->a, be = b->beta;
    const double log_m = std::lgamma(a + be + 2) + std::lgamma(a + k + 1) +
                         std::lgamma(be - ell + 1) - std::lgamma(a + 1) -
                         std::lgamma(be + 1) - std::lgamma(a + k + be - ell + 2);
    return {true, std::exp(log_m)};
  }
  const double value = mixing_expectation(
      mixing, [k](double x, double u) { return power_near_one(x, u, k); },
      -static_cast<double>(ell));
  return {true, value};
}

std::complex<double> LimitConstants::omega(double theta) const {
  if (!omega_scale) {
    fail(ErrorCode::kRange, "omega_beta is defined only for beta in (0, 1)");
  }
  if (theta == 0) return 0.0;
  const double b = *beta;
  const double s = theta > 0 ? 1.0 : -1.0;
  return *omega_scale * std::polar(1.0, -std::numbers::pi * s * (1 + b) / 2);
}

double LimitConstants::get(const std::string& name) const {
  const std::optional<double>* field = nullptr;
  if (name == "c_fbm") field = &c_fbm;
  else if (name == "K_beta") field = &K_beta;
  else if (name == "k_beta") field = &k_beta;
  else if (name == "sigma2") field = &sigma2;
  else if (name == "w_var_43") field = &w_var_43;
  else if (name == "w_var_411") field = &w_var_411;
  else if (name == "omega_scale") field = &omega_scale;
  else if (name == "psi1") field = &psi1;
  else if (name == "beta") field = &beta;
  else fail(ErrorCode::kParameter, "unknown limit constant " + name);
  if (!*field) {
    fail(ErrorCode::kRange, "limit constant " + name +
                                " is not defined for this mixing law");
  }
  return **field;
}

LimitConstants tail_constants(double beta, double lambda, double psi1) {
  require(beta > -1, ErrorCode::kParameter, "beta must exceed -1");
  require(lambda > 0, ErrorCode::kParameter, "lambda must be positive");
  require(psi1 > 0, ErrorCode::kParameter, "psi1 must be positive");
  LimitConstants c;
  c.beta = beta;
  c.psi1 = psi1;
  const double b = beta;
  using numerics::gamma_fn;
  if (b > 0 && b < 1) {
    c.c_fbm = std::sqrt(2 * lambda * psi1 * gamma_fn(b) / ((2 - b) * (1 - b)));
    c.omega_scale = psi1 * gamma_fn(1 - b) * std::pow(lambda, 1 + b) / (-b * (1 + b));
  }
  if (b > -1 && b < 0) {
    c.K_beta = psi1 * std::pow(lambda / 2, 1 + b) * gamma_fn(-b) / (1 + b);
  }
  if (b > -1 && b < 1) {
    c.k_beta = std::pow(2 * lambda, (1 + b) / 2) * psi1 * gamma_fn((1 - b) / 2) / (1 + b);
  }
  if (b == 0) c.w_var_43 = lambda * psi1;
  return c;
}

LimitConstants limit_constants(const RandomizedModel& rmodel) {
  LimitConstants c;
  const double lambda = rmodel.lambda;
  const auto& mixing = rmodel.mixing;
  c.beta = mixing.tail_exponent();
  c.psi1 = mixing.psi1();
  if (!c.beta) {
    // No density: every inverse moment is finite, as in the beta > 1 case.
    const double m02 = mixing_moment(mixing, 0, 2).value;
    const double m12 = mixing_moment(mixing, 1, 2).value;
    const double m01 = mixing_moment(mixing, 0, 1).value;
    c.sigma2 = lambda * (m02 + m12);
    c.w_var_411 = lambda * lambda * (m02 - m01 * m01);
    return c;
  }
  const double b = *c.beta;
  c = tail_constants(b, lambda, *c.psi1);
  if (b > 1) {
    const double m02 = mixing_moment(mixing, 0, 2).value;
    const double m12 = mixing_moment(mixing, 1, 2).value;
    const double m01 = mixing_moment(mixing, 0, 1).value;
    c.sigma2 = lambda * (m02 + m12);
    c.w_var_411 = lambda * lambda * (m02 - m01 * m01);
  }
  return c;
}

double double_geom_sum(double alpha, long n1, long n2) {
  require(alpha > 0 && alpha < 1, ErrorCode::kParameter, "alpha must lie in (0, 1)");
  require(n1 >= 1 && n2 >= 1, ErrorCode::kParameter, "n1 and n2 must be positive");
  if (n1 > n2) std::swap(n1, n2);
  const double u = 1.0 - alpha;
  const double num = (1 - alpha * alpha) * n1 -
                     alpha * (1 - std::pow(alpha, n2) - std::pow(alpha, n1) +
                              std::pow(alpha, n2 - n1));
  return num / (u * u * u);
}

SequenceWithLimit regvar_limit(const MixingLaw& mixing, double lambda,
                               const std::vector<long>& k_list) {
  require(lambda > 0, ErrorCode::kParameter, "lambda must be positive");
  const double b = require_beta(mixing, "regvar_limit");
  require(b > 0 && b < 1, ErrorCode::kRange, "regvar_limit needs beta in (0, 1)");
  SequenceWithLimit out;
  for (long k : k_list) {
    require(k >= 0, ErrorCode::kParameter, "lags must be nonnegative");
    const Moment m = mixing_moment(mixing, static_cast<int>(k), 1);
    out.values.push_back(std::pow(static_cast<double>(k), b) * m.value);
  }
  out.limit = *mixing.psi1() * numerics::gamma_fn(b);
  return out;
}

MarkovGapReport markov_gap(const RandomizedModel& rmodel) {
  const double lambda = rmodel.lambda;
  // A common factor exp(-lambda) is dropped from every integral:
  // exp(-lambda / u) = exp(-lambda) exp(-lambda x / u).
  auto e = [lambda](double x, double u) { return std::exp(-lambda * x / u); };
  const double tol = 1e-14;
  const auto& m = rmodel.mixing;
  const double i1 = mixing_expectation(m, [&](double x, double u) { return u * e(x, u); },
                                       0.0, tol);
  const double i2 = mixing_expectation(m, e, 0.0, tol);
  const double i4 = mixing_expectation(
      m, [&](double x, double u) { return e(x, u) / u; }, 0.0, tol);
  MarkovGapReport r;
  r.p_cond2 = std::exp(-lambda) * i1 / i2;
  r.p_cond1 = std::exp(-lambda) * i2 / i4;
  r.gap = r.p_cond2 - r.p_cond1;
  return r;
}

double fbm_variance_check(double beta) {
  require(beta > 0 && beta < 1, ErrorCode::kRange,
          "fbm_variance_check needs beta in (0, 1)");
  // e^{-x} - 1 + x loses all precision for small x; use its series there.
  // e^{-x} - 1 + x loses all precision for small x; there the integrand is
  // x^{beta-1} times the series sum_{j>=2} (-x)^{j-2} / j!.
  auto head = [beta](double x) {
    if (!(x > 0) || !std::isfinite(x)) return 0.0;
    if (x < 0.1) {
      double term = 0.5, s = 0;
      for (int j = 2; j < 30; ++j) {
        s += term;
        term *= -x / (j + 1);
      }
      return s * std::pow(x, beta - 1);
    }
    return (std::expm1(-x) + x) * std::pow(x, beta - 3);
  };
  const double near = numerics::integrate(head, 0.0, 1.0, 1e-14);
  const double far = numerics::integrate_half_line(
      [&](double t) { return head(1.0 + t); }, 1e-14);
  return (2 - beta) * (1 - beta) / numerics::gamma_fn(beta) * (near + far);
}

SequenceWithLimit tail_asymptotic(const MixingLaw& mixing, double lambda,
                                  const std::vector<double>& x_list) {
  require(lambda > 0, ErrorCode::kParameter, "lambda must be positive");
  const double b = require_beta(mixing, "tail_asymptotic");
  require(b > -1 && b < 1, ErrorCode::kRange, "tail_asymptotic needs beta in (-1, 1)");
  SequenceWithLimit out;
  for (double x : x_list) {
    require(x > 0, ErrorCode::kParameter, "tail points must be positive");
    // lambda (1+a)/(1-a)^2 > x  iff  1 - a < u_star.
    const double u_star = 1.0 / (0.25 + std::sqrt(x / (2 * lambda) + 1.0 / 16));
    double p;
    if (const auto* be = std::get_if<mixing::Beta>(&mixing.variant())) {
      // 1 - alpha ~ Beta(beta + 1, a + 1).
      p = boost::math::ibeta(be->beta + 1, be->a + 1, u_star);
    } else {
      const double e = b + 1;
      p = numerics::integrate(
              [&](double w) {
                const double v = std::pow(w, 1.0 / e);
                return v > 0 ? mixing.psi(1.0 - v, v) : 0.0;
              },
              0.0, std::pow(u_star, e), 1e-13) /
          e;
    }
    out.values.push_back(std::pow(x, (1 + b) / 2) * p);
  }
  out.limit = *mixing.psi1() * std::pow(2 * lambda, (1 + b) / 2) / (1 + b);
  return out;
}

}  // namespace inarlab
