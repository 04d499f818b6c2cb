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

#include "inarlab/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "inarlab/error.hpp"
#include "inarlab/numerics.hpp"

namespace inarlab {

namespace {

void check_lambda(double lambda) {
  require(lambda > 0 && std::isfinite(lambda), ErrorCode::kParameter,
          "innovation mean lambda must be positive and finite");
}

void check_coefficient(Coefficient c) {
  require(c.alpha > 0 && c.alpha < 1 && c.complement > 0 && c.complement < 1,
          ErrorCode::kParameter, "thinning coefficient must lie in (0, 1)");
}

double beta_log_constant(double a, double b) {
  return std::lgamma(a + b + 2) - std::lgamma(a + 1) - std::lgamma(b + 1);
}

}  // namespace

InarModel::InarModel(double lambda, double alpha)
    : InarModel(lambda, Coefficient::from_alpha(alpha)) {}

InarModel::InarModel(double lambda, Coefficient c) : lambda_(lambda), c_(c) {
  check_lambda(lambda);
  check_coefficient(c);
}

MixingLaw MixingLaw::degenerate(double alpha0) {
  require(alpha0 > 0 && alpha0 < 1, ErrorCode::kParameter,
          "degenerate mixing law needs alpha0 in (0, 1)");
  return MixingLaw(mixing::Degenerate{alpha0});
}

MixingLaw MixingLaw::beta(double a, double beta) {
  require(a > -1 && std::isfinite(a), ErrorCode::kParameter,
          "Beta mixing law needs a > -1");
  require(beta > -1 && std::isfinite(beta), ErrorCode::kParameter,
          "Beta mixing law needs beta > -1");
  return MixingLaw(mixing::Beta{a, beta});
}

MixingLaw MixingLaw::general(std::function<double(double, double)> psi,
                             double beta, double psi1, double psi_sup) {
  require(static_cast<bool>(psi), ErrorCode::kParameter, "psi is empty");
  require(beta > -1 && std::isfinite(beta), ErrorCode::kParameter,
          "general mixing law needs beta > -1");
  require(psi1 > 0 && std::isfinite(psi1), ErrorCode::kParameter,
          "psi1 must be positive");
  require(psi_sup > 0 && std::isfinite(psi_sup), ErrorCode::kParameter,
          "psi_sup must be positive");

  // Envelope on a grid refined towards both endpoints.
  for (int i = 1; i < 1000; ++i) {
    const double x = i / 1000.0;
    const double v = psi(x, 1.0 - x);
    require(std::isfinite(v) && v >= 0, ErrorCode::kParameter,
            "psi must be finite and nonnegative on (0, 1)");
    require(v <= psi_sup, ErrorCode::kParameter,
            "psi exceeds the envelope psi_sup");
  }
  for (int k = 4; k <= 8; ++k) {
    const double u = std::pow(10.0, -k);
    const double at_one = psi(1.0 - u, u);
    const double at_zero = psi(u, 1.0 - u);
    require(at_one <= psi_sup && at_zero <= psi_sup, ErrorCode::kParameter,
            "psi exceeds the envelope psi_sup");
    std::ostringstream os;
    os << "psi(1 - 1e-" << k << ") = " << at_one << " is not close to psi1 = "
       << psi1;
    require(std::fabs(at_one - psi1) <= 1e-2 * psi1, ErrorCode::kParameter,
            os.str());
  }
  const double mass = numerics::integrate_unit(
      [&](double x, double u) { return psi(x, u); }, beta, 1e-12);
  if (std::fabs(mass - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "mixing density integrates to " << mass << ", not 1";
    fail(ErrorCode::kParameter, os.str());
  }
  return MixingLaw(mixing::General{std::move(psi), beta, psi1, psi_sup});
}

MixingLaw MixingLaw::atoms(std::vector<double> values,
                           std::vector<double> weights) {
  require(!values.empty() && values.size() == weights.size(),
          ErrorCode::kParameter,
          "atomic mixing law needs matching, nonempty values and weights");
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(values[i] > 0 && values[i] < 1, ErrorCode::kParameter,
            "atoms must lie in (0, 1)");
    require(weights[i] > 0 && std::isfinite(weights[i]), ErrorCode::kParameter,
            "atom weights must be positive");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  require(std::fabs(total - 1.0) <= 1e-12, ErrorCode::kParameter,
          "atom weights must sum to one");
  for (double& w : weights) w /= total;
  return MixingLaw(mixing::Atoms{std::move(values), std::move(weights)});
}

std::string MixingLaw::kind() const {
  switch (v_.index()) {
    case 0: return "degenerate";
    case 1: return "beta";
    case 2: return "general";
    default: return "atoms";
  }
}

bool MixingLaw::is_degenerate() const noexcept {
  if (std::holds_alternative<mixing::Degenerate>(v_)) return true;
  if (const auto* at = std::get_if<mixing::Atoms>(&v_)) {
    for (double x : at->values) {
      if (x != at->values.front()) return false;
    }
    return true;
  }
  return false;
}

bool MixingLaw::has_density() const noexcept {
  return std::holds_alternative<mixing::Beta>(v_) ||
         std::holds_alternative<mixing::General>(v_);
}

std::optional<double> MixingLaw::tail_exponent() const noexcept {
  if (const auto* b = std::get_if<mixing::Beta>(&v_)) return b->beta;
  if (const auto* g = std::get_if<mixing::General>(&v_)) return g->beta;
  return std::nullopt;
}

std::optional<double> MixingLaw::psi1() const noexcept {
  if (const auto* b = std::get_if<mixing::Beta>(&v_)) {
    return std::exp(beta_log_constant(b->a, b->beta));
  }
  if (const auto* g = std::get_if<mixing::General>(&v_)) return g->psi1;
  return std::nullopt;
}

double MixingLaw::psi(double x, double u) const {
  if (const auto* b = std::get_if<mixing::Beta>(&v_)) {
    return std::exp(beta_log_constant(b->a, b->beta)) * std::pow(x, b->a);
  }
  if (const auto* g = std::get_if<mixing::General>(&v_)) return g->psi(x, u);
  fail(ErrorCode::kCapability, "mixing law " + kind() + " has no density");
}

double MixingLaw::density(double x, double u) const {
  if (const auto* b = std::get_if<mixing::Beta>(&v_)) {
    if (x <= 0 || u <= 0) return 0.0;
    return std::exp(beta_log_constant(b->a, b->beta) + b->a * std::log(x) +
                    b->beta * std::log(u));
  }
  if (const auto* g = std::get_if<mixing::General>(&v_)) {
    return g->psi(x, u) * std::pow(u, g->beta);
  }
  fail(ErrorCode::kCapability, "mixing law " + kind() + " has no density");
}

bool MixingLaw::inverse_moment_finite(double l) const noexcept {
  if (auto b = tail_exponent()) return *b > l - 1;
  return true;
}

std::string MixingLaw::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* d = std::get_if<mixing::Degenerate>(&v_)) {
    os << "degenerate(alpha0=" << d->alpha0 << ")";
  } else if (const auto* b = std::get_if<mixing::Beta>(&v_)) {
    os << "beta(a=" << b->a << ", beta=" << b->beta << ")";
  } else if (const auto* g = std::get_if<mixing::General>(&v_)) {
    os << "general(beta=" << g->beta << ", psi1=" << g->psi1
       << ", psi_sup=" << g->psi_sup << ")";
  } else {
    const auto& at = std::get<mixing::Atoms>(v_);
    os << "atoms(";
    for (std::size_t i = 0; i < at.values.size(); ++i) {
      os << (i ? ", " : "") << at.values[i] << ":" << at.weights[i];
    }
    os << ")";
  }
  return os.str();
}

RandomizedModel::RandomizedModel(double lambda_, MixingLaw mixing_)
    : lambda(lambda_), mixing(std::move(mixing_)) {
  check_lambda(lambda_);
}

}  // namespace inarlab
