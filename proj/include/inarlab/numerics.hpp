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

// Numerical building blocks shared by the analytic and sampling modules:
// a pole-checked Gamma function and adaptive quadrature with endpoint
// handling for integrands of the form u^gamma g(1 - u) on (0, 1).

#include <functional>

namespace inarlab::numerics {

// Gamma function. Throws ErrorCode::kRange at the poles (non-positive
// integers) and when the result overflows.
double gamma_fn(double x);

// Adaptive double-exponential quadrature on a finite interval. Throws
// ErrorCode::kNumeric when the error estimate exceeds `tol` relative to the
// L1 norm of the integrand.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

// Integral over (0, infinity).
double integrate_half_line(const std::function<double(double)>& f,
                           double tol = 1e-12);

// Integral over (0, 1) of u^weight_exponent * g(x, u) dx where u = 1 - x.
// g receives both x and u so that neither loses precision near its endpoint.
// The endpoint weight is absorbed by the substitution v = u^(weight_exponent+1)
// on (1/2, 1); weight_exponent must exceed -1.
double integrate_unit(const std::function<double(double x, double u)>& g,
                      double weight_exponent = 0.0, double tol = 1e-12);

}  // namespace inarlab::numerics
