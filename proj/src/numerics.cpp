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

#include "inarlab/numerics.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "inarlab/error.hpp"

namespace inarlab::numerics {

namespace {

// The double-exponential rules stop once successive levels agree to
// sqrt(tol); the reported error is that difference, while the actual error is
// roughly its square. Anything above the stopping threshold means the rule
// ran out of levels.
void check_error(double value, double error, double l1, double tol,
                 const char* what) {
  if (!std::isfinite(value)) {
    fail(ErrorCode::kNumeric, std::string(what) + ": integral is not finite");
  }
  const double scale = std::max(l1, std::fabs(value));
  if (error > std::sqrt(tol) * scale * 10.0) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (estimate " << value
       << ", error " << error << ")";
    fail(ErrorCode::kNumeric, os.str());
  }
}

// One rule per thread: the abscissa tables grow lazily.
boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  return rule;
}

}  // namespace

double gamma_fn(double x) {
  if (x <= 0 && x == std::floor(x)) {
    std::ostringstream os;
    os << "Gamma function pole at " << x;
    fail(ErrorCode::kRange, os.str());
  }
  const double g = std::tgamma(x);
  if (!std::isfinite(g)) {
    std::ostringstream os;
    os << "Gamma function overflow at " << x;
    fail(ErrorCode::kRange, os.str());
  }
  return g;
}

namespace {

struct Piece {
  double value = 0, error = 0, l1 = 0;
};

Piece tanh_sinh_piece(const std::function<double(double)>& f, double a,
                      double b, double tol) {
  Piece p;
  if (a == b) return p;
  p.value = tanh_sinh_rule().integrate(f, a, b, std::sqrt(tol), &p.error, &p.l1);
  return p;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const Piece p = tanh_sinh_piece(f, a, b, tol);
  check_error(p.value, p.error, p.l1, tol, "integrate");
  return p.value;
}

double integrate_half_line(const std::function<double(double)>& f, double tol) {
  boost::math::quadrature::exp_sinh<double> rule(12);
  double error = 0.0, l1 = 0.0;
  const double value = rule.integrate(f, std::sqrt(tol), &error, &l1);
  check_error(value, error, l1, tol, "integrate_half_line");
  return value;
}

double integrate_unit(const std::function<double(double x, double u)>& g,
                      double weight_exponent, double tol) {
  require(weight_exponent > -1.0, ErrorCode::kDomain,
          "integrate_unit: endpoint weight exponent must exceed -1");
  const double w = weight_exponent;
  // Left half, plain variable; the weight is smooth there.
  const Piece left = tanh_sinh_piece(
      [&](double x) { return std::pow(1.0 - x, w) * g(x, 1.0 - x); }, 0.0, 0.5,
      tol);
  // Right half in u = 1 - x. A singular weight is absorbed by v = u^(w + 1),
  // u^w du = dv / (w + 1); a bounded one is left alone, since the
  // substitution would put an infinite slope at the endpoint.
  Piece right;
  if (w < 0) {
    const double e = w + 1.0;
    right = tanh_sinh_piece(
        [&](double v) {
          const double u = std::pow(v, 1.0 / e);
          if (!(u > 0.0)) return 0.0;
          return g(1.0 - u, u) / e;
        },
        0.0, std::pow(0.5, e), tol);
  } else {
    right = tanh_sinh_piece(
        [&](double u) { return std::pow(u, w) * g(1.0 - u, u); }, 0.0, 0.5, tol);
  }
  // The halves can differ by many orders of magnitude; judge the error
  // against the whole integral.
  const double value = left.value + right.value;
  check_error(value, left.error + right.error, left.l1 + right.l1, tol,
              "integrate_unit");
  return value;
}

}  // namespace inarlab::numerics
