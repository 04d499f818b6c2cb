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

#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "inarlab/error.hpp"
#include "inarlab/numerics.hpp"

using namespace inarlab;

TEST_SUITE("numerics") {

TEST_CASE("gamma function and poles") {
  for (double x : {0.5, 1.0, 3.7, -0.5, -2.3, 1e-8, 150.2}) {
    CHECK(numerics::gamma_fn(x) ==
          doctest::Approx(boost::math::tgamma(x)).epsilon(1e-13));
  }
  for (double x : {0.0, -1.0, -7.0}) {
    try {
      numerics::gamma_fn(x);
      FAIL("pole not reported");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRange);
    }
  }
  CHECK_THROWS_AS(numerics::gamma_fn(200.0), Error);
}

TEST_CASE("unit interval integrals with endpoint singularities") {
  // Beta integrals, including weights close to the integrability boundary.
  for (double a : {-0.7, 0.0, 2.0}) {
    for (double w : {-0.95, -0.4, 0.0, 1.5}) {
      CAPTURE(a);
      CAPTURE(w);
      const double got = numerics::integrate_unit(
          [&](double x, double) { return std::pow(x, a); }, w);
      CHECK(got == doctest::Approx(boost::math::beta(a + 1, w + 1)).epsilon(1e-10));
    }
  }
  // Integrand that lives entirely in the last 1e-6 of the interval.
  const double got = numerics::integrate_unit(
      [](double, double u) { return std::exp(-u * 1e6) * 1e6; }, 0.0);
  CHECK(got == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("finite and half-line integrals") {
  CHECK(numerics::integrate([](double x) { return std::sin(x); }, 0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(numerics::integrate_half_line(
            [](double x) { return std::exp(-x) * std::pow(x, -0.5); }) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
  CHECK_THROWS_AS(numerics::integrate_unit([](double, double) { return 1.0; },
                                           -1.0),
                  Error);
}

}
