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


#include "inarlab/limit_laws.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "inarlab/analytics.hpp"
#include "inarlab/error.hpp"
#include "inarlab/sampling.hpp"
#include "inarlab/variates.hpp"

namespace inarlab {

namespace {

constexpr double kPi = std::numbers::pi;

double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// Angle uniform on (-pi/2, pi/2).
double uniform_angle(RngStream& rng) { return kPi * (rng.uniform() - 0.5); }

// Variance of X_t - t X_1 for a process with covariance c.
template <class Cov>
double bridge_cov(const Cov& c, double s, double t) {
  return c(s, t) - t * c(s, 1.0) - s * c(t, 1.0) + s * t * c(1.0, 1.0);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

double fbm_cov(double beta, double t1, double t2) {
  require(beta > 0 && beta < 2, ErrorCode::kParameter, "fbm_cov needs beta in (0, 2)");
  require(t1 >= 0 && t2 >= 0, ErrorCode::kParameter, "fbm_cov needs nonnegative times");
  const double h2 = 2.0 - beta;
  return 0.5 * (std::pow(t1, h2) + std::pow(t2, h2) - std::pow(std::abs(t2 - t1), h2));
}

FbmSampler::FbmSampler(double beta, std::vector<double> t_grid)
    : beta_(beta), grid_(std::move(t_grid)) {
  require(beta > 0 && beta < 2, ErrorCode::kParameter, "fBm needs beta in (0, 2)");
  require(!grid_.empty() && grid_.size() <= kMaxCholeskyGrid, ErrorCode::kParameter,
          "fBm grid must have between 1 and 1000 points");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    require(grid_[i] > 0 && (i == 0 || grid_[i] > grid_[i - 1]), ErrorCode::kParameter,
            "fBm grid must be positive and strictly increasing");
  }
  const auto n = static_cast<Eigen::Index>(grid_.size());
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) cov(i, j) = fbm_cov(beta, grid_[i], grid_[j]);
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  require(llt.info() == Eigen::Success, ErrorCode::kNumeric,
          "Cholesky factorization of the fBm covariance failed; the grid is "
          "numerically degenerate");
  const Eigen::MatrixXd L = llt.matrixL();
  lower_.resize(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) lower_[i * n + j] = L(i, j);
  }
}

std::vector<double> FbmSampler::operator()(RngStream& rng) const {
  const std::size_t n = grid_.size();
  std::vector<double> z(n), out(n, 0.0);
  for (double& v : z) v = variates::standard_normal(rng);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j <= i; ++j) s += lower_[i * n + j] * z[j];
    out[i] = s;
  }
  return out;
}

std::vector<double> sample_fbm(double beta, const std::vector<double>& t_grid,
                               RngStream& rng) {
  return FbmSampler(beta, t_grid)(rng);
}

double sample_stable(double index, double skew, double sigma, RngStream& rng) {
  require(index > 0 && index <= 2, ErrorCode::kParameter, "stable index must lie in (0, 2]");
  require(skew >= -1 && skew <= 1, ErrorCode::kParameter, "skewness must lie in [-1, 1]");
  require(sigma > 0, ErrorCode::kParameter, "stable scale must be positive");
  const double v = uniform_angle(rng);
  if (index == 1.0) {
    require(skew == 0.0, ErrorCode::kParameter, "index 1 is supported only without skewness");
    return sigma * std::tan(v);
  }
  const double w = variates::exponential(rng);
  const double a = index;
  const double zeta = skew * std::tan(kPi * a / 2);
  const double b = std::atan(zeta) / a;
  const double s = std::pow(1 + zeta * zeta, 1 / (2 * a));
  const double x = s * std::sin(a * (v + b)) / std::pow(std::cos(v), 1 / a) *
                   std::pow(std::cos(v - a * (v + b)) / w, (1 - a) / a);
  return sigma * x;
}

double sample_stable_symmetric(double index, double scale_const, RngStream& rng) {
  require(scale_const > 0, ErrorCode::kParameter, "scale constant must be positive");
  return sample_stable(index, 0.0, std::pow(scale_const, 1 / index), rng);
}

double sample_positive_stable(double beta, double k_beta, RngStream& rng) {
  require(beta > -1 && beta < 1, ErrorCode::kParameter,
          "positive stable law needs beta in (-1, 1)");
  require(k_beta > 0, ErrorCode::kParameter, "k_beta must be positive");
  const double rho = (1 + beta) / 2;
  for (;;) {
    const double u = rng.uniform();
    const double w = variates::exponential(rng);
    const double a = std::pow(std::pow(std::sin(rho * kPi * u), rho) *
                                  std::pow(std::sin((1 - rho) * kPi * u), 1 - rho) /
                                  std::sin(kPi * u),
                              1 / (1 - rho));
    const double y = std::pow(k_beta, 1 / rho) * std::pow(a / w, (1 - rho) / rho);
    // Overflow or underflow in the extreme tails; redraw.
    if (y > 0 && std::isfinite(y)) return y;
  }
}

LimitLaw LimitLaw::scaled_bm(double sigma) {
  require(sigma > 0, ErrorCode::kParameter, "sigma must be positive");
  return LimitLaw(limit::ScaledBM{sigma});
}

LimitLaw LimitLaw::fbm(double beta, double scale) {
  require(beta > 0 && beta < 1, ErrorCode::kRange, "fBm limit needs beta in (0, 1)");
  require(scale > 0, ErrorCode::kParameter, "fBm scale must be positive");
  return LimitLaw(limit::FBM{beta, scale});
}

LimitLaw LimitLaw::symmetric_line(double index, double scale_const) {
  require(index > 0 && index <= 2, ErrorCode::kParameter, "stable index must lie in (0, 2]");
  require(scale_const > 0, ErrorCode::kParameter, "scale constant must be positive");
  return LimitLaw(limit::StableLine{limit::LineKind::kSymmetricStable, index, scale_const});
}

LimitLaw LimitLaw::skewed_line(double beta, double omega_scale) {
  require(beta > 0 && beta < 1, ErrorCode::kRange, "skewed stable line needs beta in (0, 1)");
  return LimitLaw(limit::StableLine{limit::LineKind::kSkewedStable, 1 + beta, omega_scale});
}

LimitLaw LimitLaw::gaussian_line(double variance) {
  require(variance > 0, ErrorCode::kParameter, "variance must be positive");
  return LimitLaw(limit::StableLine{limit::LineKind::kGaussian, 2.0, variance});
}

LimitLaw LimitLaw::subordinated_levy(double beta, double k_beta) {
  require(beta > -1 && beta < 1, ErrorCode::kRange,
          "subordinated Levy limit needs beta in (-1, 1)");
  require(k_beta > 0, ErrorCode::kParameter, "k_beta must be positive");
  return LimitLaw(limit::SubordinatedLevy{beta, k_beta});
}

LimitLaw LimitLaw::random_slope(const RandomizedModel& rmodel) {
  return LimitLaw(limit::RandomSlopeMixing{
      rmodel.lambda, std::make_shared<const MixingLaw>(rmodel.mixing),
      unconditional_mean(rmodel)});
}

LimitLaw LimitLaw::bridge(const LimitLaw& inner) {
  const bool ok = std::holds_alternative<limit::ScaledBM>(inner.v_) ||
                  std::holds_alternative<limit::FBM>(inner.v_) ||
                  std::holds_alternative<limit::SubordinatedLevy>(inner.v_);
  require(ok, ErrorCode::kParameter,
          "bridges wrap only Brownian, fractional Brownian or subordinated Levy limits");
  return LimitLaw(limit::Bridge{std::make_shared<const LimitLaw>(inner)});
}

std::string LimitLaw::kind() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, limit::ScaledBM>) return "scaled_bm";
        if constexpr (std::is_same_v<T, limit::FBM>) return "fbm";
        if constexpr (std::is_same_v<T, limit::StableLine>) return "stable_line";
        if constexpr (std::is_same_v<T, limit::SubordinatedLevy>) return "subordinated_levy";
        if constexpr (std::is_same_v<T, limit::RandomSlopeMixing>) return "random_slope";
        return "bridge";
      },
      v_);
}

std::string LimitLaw::describe() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, limit::ScaledBM>) {
          return "sigma B with sigma = " + fmt(v.sigma);
        } else if constexpr (std::is_same_v<T, limit::FBM>) {
          return fmt(v.scale) + " x fBm with Hurst index " + fmt(1 - v.beta / 2);
        } else if constexpr (std::is_same_v<T, limit::StableLine>) {
          switch (v.kind) {
            case limit::LineKind::kSymmetricStable:
              return "V t, V symmetric stable with CF exp(-" + fmt(v.scale) + " |theta|^" +
                     fmt(v.index) + ")";
            case limit::LineKind::kSkewedStable:
              return "Z t, Z stable of index " + fmt(v.index) + " with omega scale " +
                     fmt(v.scale);
            case limit::LineKind::kGaussian:
              return "W t, W normal with variance " + fmt(v.scale);
          }
          return "";
        } else if constexpr (std::is_same_v<T, limit::SubordinatedLevy>) {
          return "sqrt(Y) B, Y positive stable of index " + fmt((1 + v.beta) / 2) +
                 " with k_beta = " + fmt(v.k_beta);
        } else if constexpr (std::is_same_v<T, limit::RandomSlopeMixing>) {
          return "(lambda/(1-alpha) - " + fmt(v.mean) + ") t under " + v.mixing->describe();
        } else {
          return "bridge of [" + v.inner->describe() + "]";
        }
      },
      v_);
}

bool LimitLaw::is_gaussian() const noexcept {
  if (std::holds_alternative<limit::ScaledBM>(v_) || std::holds_alternative<limit::FBM>(v_)) {
    return true;
  }
  if (const auto* l = std::get_if<limit::StableLine>(&v_)) {
    return l->kind == limit::LineKind::kGaussian;
  }
  if (const auto* b = std::get_if<limit::Bridge>(&v_)) return b->inner->is_gaussian();
  return false;
}

LimitLaw LimitLaw::with_dispersion(double d) const {
  require(d > 0, ErrorCode::kParameter, "dispersion factor must be positive");
  return std::visit(
      [d](const auto& v) -> LimitLaw {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, limit::ScaledBM>) {
          return LimitLaw(limit::ScaledBM{v.sigma * std::sqrt(d)});
        } else if constexpr (std::is_same_v<T, limit::FBM>) {
          return LimitLaw(limit::FBM{v.beta, v.scale * std::sqrt(d)});
        } else if constexpr (std::is_same_v<T, limit::StableLine>) {
          return LimitLaw(limit::StableLine{v.kind, v.index, v.scale * d});
        } else if constexpr (std::is_same_v<T, limit::SubordinatedLevy>) {
          return LimitLaw(limit::SubordinatedLevy{v.beta, v.k_beta * d});
        } else if constexpr (std::is_same_v<T, limit::RandomSlopeMixing>) {
          fail(ErrorCode::kCapability, "a random slope has no dispersion parameter");
        } else {
          return LimitLaw(limit::Bridge{
              std::make_shared<const LimitLaw>(v.inner->with_dispersion(d))});
        }
      },
      v_);
}

LimitLaw limit_law_for(Regime regime, const RandomizedModel& rmodel) {
  const RegimeScaling scaling = regime_scaling(regime, rmodel);
  const LimitConstants c = limit_constants(rmodel);
  switch (regime) {
    case Regime::kT33:
    case Regime::kT49:
      return LimitLaw::scaled_bm(std::sqrt(c.get("sigma2")));
    case Regime::kT45:
      return LimitLaw::fbm(scaling.beta, c.get("c_fbm"));
    case Regime::kT46:
      return LimitLaw::symmetric_line(2 * (1 + scaling.beta), c.get("K_beta"));
    case Regime::kT47:
      return LimitLaw::gaussian_line(c.get("w_var_43"));
    case Regime::kT48:
      return LimitLaw::subordinated_levy(scaling.beta, c.get("k_beta"));
    case Regime::kT410:
      return LimitLaw::skewed_line(scaling.beta, c.get("omega_scale"));
    case Regime::kT411:
      return LimitLaw::gaussian_line(c.get("w_var_411"));
    case Regime::kC412a:
      return LimitLaw::bridge(LimitLaw::fbm(scaling.beta, c.get("c_fbm")));
    case Regime::kC412b:
      return LimitLaw::bridge(LimitLaw::subordinated_levy(scaling.beta, c.get("k_beta")));
    case Regime::kC412c:
      return LimitLaw::bridge(LimitLaw::scaled_bm(std::sqrt(c.get("sigma2"))));
  }
  fail(ErrorCode::kInternal, "unknown regime");
}

std::complex<double> limit_cf(const LimitLaw& law, double theta, double t) {
  require(t >= 0, ErrorCode::kParameter, "time must be nonnegative");
  using cplx = std::complex<double>;
  auto gaussian = [&](double var) { return cplx(std::exp(-0.5 * var * theta * theta), 0.0); };
  const auto& v = law.variant();
  if (const auto* b = std::get_if<limit::ScaledBM>(&v)) return gaussian(b->sigma * b->sigma * t);
  if (const auto* f = std::get_if<limit::FBM>(&v)) {
    return gaussian(f->scale * f->scale * std::pow(t, 2 - f->beta));
  }
  if (const auto* l = std::get_if<limit::StableLine>(&v)) {
    const double x = theta * t;
    switch (l->kind) {
      case limit::LineKind::kGaussian:
        return cplx(std::exp(-0.5 * l->scale * x * x), 0.0);
      case limit::LineKind::kSymmetricStable:
        return cplx(std::exp(-l->scale * std::pow(std::abs(x), l->index)), 0.0);
      case limit::LineKind::kSkewedStable: {
        if (x == 0) return 1.0;
        const cplx omega = l->scale * std::polar(1.0, -kPi * sign(x) * l->index / 2);
        return std::exp(-std::pow(std::abs(x), l->index) * omega);
      }
    }
  }
  if (const auto* s = std::get_if<limit::SubordinatedLevy>(&v)) {
    const double rho = (1 + s->beta) / 2;
    return cplx(std::exp(-s->k_beta * std::pow(theta * theta * t / 2, rho)), 0.0);
  }
  if (const auto* r = std::get_if<limit::RandomSlopeMixing>(&v)) {
    const auto& mv = r->mixing->variant();
    if (std::holds_alternative<mixing::Degenerate>(mv)) return 1.0;
    if (const auto* at = std::get_if<mixing::Atoms>(&mv)) {
      cplx sum = 0;
      for (std::size_t i = 0; i < at->values.size(); ++i) {
        const double slope = r->lambda / (1 - at->values[i]) - r->mean;
        sum += at->weights[i] * std::polar(1.0, theta * t * slope);
      }
      return sum;
    }
    fail(ErrorCode::kCapability,
         "no closed-form CF for a random slope under a mixing density");
  }
  const auto& inner = *std::get<limit::Bridge>(v).inner;
  const auto& iv = inner.variant();
  if (const auto* s = std::get_if<limit::SubordinatedLevy>(&iv)) {
    const double var = t - 2 * t * std::min(t, 1.0) + t * t;
    const double rho = (1 + s->beta) / 2;
    return cplx(std::exp(-s->k_beta * std::pow(theta * theta * var / 2, rho)), 0.0);
  }
  return gaussian(limit_cov(law, t, t));
}

double limit_cov(const LimitLaw& law, double s, double t) {
  require(s >= 0 && t >= 0, ErrorCode::kParameter, "times must be nonnegative");
  const auto& v = law.variant();
  if (const auto* b = std::get_if<limit::ScaledBM>(&v)) return b->sigma * b->sigma * std::min(s, t);
  if (const auto* f = std::get_if<limit::FBM>(&v)) {
    return f->scale * f->scale * fbm_cov(f->beta, s, t);
  }
  if (const auto* l = std::get_if<limit::StableLine>(&v)) {
    if (l->kind == limit::LineKind::kGaussian) return l->scale * s * t;
  }
  if (const auto* br = std::get_if<limit::Bridge>(&v)) {
    if (br->inner->is_gaussian()) {
      const auto& inner = *br->inner;
      return bridge_cov([&](double a, double b) { return limit_cov(inner, a, b); }, s, t);
    }
  }
  fail(ErrorCode::kCapability, "covariance is defined here only for Gaussian limits");
}

LimitPathSampler::LimitPathSampler(LimitLaw law, std::vector<double> t_grid)
    : law_(std::move(law)), grid_(std::move(t_grid)) {
  require(!grid_.empty(), ErrorCode::kParameter, "time grid is empty");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    require(grid_[i] > 0 && (i == 0 || grid_[i] > grid_[i - 1]), ErrorCode::kParameter,
            "time grid must be positive and strictly increasing");
  }
  const LimitLaw* base = &law_;
  inner_grid_ = grid_;
  if (const auto* b = std::get_if<limit::Bridge>(&law_.variant())) {
    base = b->inner.get();
    if (!std::binary_search(inner_grid_.begin(), inner_grid_.end(), 1.0)) {
      inner_grid_.insert(std::upper_bound(inner_grid_.begin(), inner_grid_.end(), 1.0), 1.0);
    }
  }
  if (const auto* f = std::get_if<limit::FBM>(&base->variant())) {
    fbm_ = std::make_unique<FbmSampler>(f->beta, inner_grid_);
  }
}

std::vector<double> LimitPathSampler::draw(const LimitLaw& law, RngStream& rng) const {
  const auto& g = inner_grid_;
  std::vector<double> out(g.size());
  auto brownian = [&](double scale) {
    double prev = 0, b = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      b += std::sqrt(g[i] - prev) * variates::standard_normal(rng);
      prev = g[i];
      out[i] = scale * b;
    }
  };
  const auto& v = law.variant();
  if (const auto* b = std::get_if<limit::ScaledBM>(&v)) {
    brownian(b->sigma);
  } else if (const auto* f = std::get_if<limit::FBM>(&v)) {
    out = (*fbm_)(rng);
    for (double& x : out) x *= f->scale;
  } else if (const auto* l = std::get_if<limit::StableLine>(&v)) {
    double slope = 0;
    switch (l->kind) {
      case limit::LineKind::kGaussian:
        slope = std::sqrt(l->scale) * variates::standard_normal(rng);
        break;
      case limit::LineKind::kSymmetricStable:
        slope = sample_stable_symmetric(l->index, l->scale, rng);
        break;
      case limit::LineKind::kSkewedStable: {
        // scale * cos(pi a / 2) is sigma^a; both factors are negative.
        const double sig_a = l->scale * std::cos(kPi * l->index / 2);
        slope = sample_stable(l->index, 1.0, std::pow(sig_a, 1 / l->index), rng);
        break;
      }
    }
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = slope * g[i];
  } else if (const auto* s = std::get_if<limit::SubordinatedLevy>(&v)) {
    const double y = sample_positive_stable(s->beta, s->k_beta, rng);
    brownian(std::sqrt(y));
  } else if (const auto* r = std::get_if<limit::RandomSlopeMixing>(&v)) {
    const Coefficient c = sample_mixing(*r->mixing, rng);
    const double slope = r->lambda / c.complement - r->mean;
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = slope * g[i];
  } else {
    fail(ErrorCode::kInternal, "nested bridge");
  }
  return out;
}

std::vector<double> LimitPathSampler::operator()(RngStream& rng) const {
  const auto* b = std::get_if<limit::Bridge>(&law_.variant());
  if (b == nullptr) return draw(law_, rng);
  const std::vector<double> inner = draw(*b->inner, rng);
  const auto one = std::lower_bound(inner_grid_.begin(), inner_grid_.end(), 1.0);
  const double at_one = inner[one - inner_grid_.begin()];
  std::vector<double> out(grid_.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    while (inner_grid_[k] != grid_[i]) ++k;
    out[i] = inner[k] - grid_[i] * at_one;
  }
  return out;
}

std::vector<double> sample_limit_path(const LimitLaw& law,
                                      const std::vector<double>& t_grid,
                                      RngStream& rng) {
  return LimitPathSampler(law, t_grid)(rng);
}

}  // namespace inarlab
