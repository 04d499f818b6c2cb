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

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace inarlab {

// Thinning coefficient stored together with its complement 1 - alpha, which
// carries the precision when alpha is close to one.
struct Coefficient {
  double alpha;
  double complement;

  static Coefficient from_alpha(double alpha) { return {alpha, 1.0 - alpha}; }
  static Coefficient from_complement(double u) { return {1.0 - u, u}; }
};

// INAR(1) with Poisson(lambda) innovations and thinning probability alpha.
class InarModel {
 public:
  InarModel(double lambda, double alpha);
  InarModel(double lambda, Coefficient c);

  double lambda() const noexcept { return lambda_; }
  double alpha() const noexcept { return c_.alpha; }
  double complement() const noexcept { return c_.complement; }
  Coefficient coefficient() const noexcept { return c_; }
  // Mean of the stationary Poisson law, lambda / (1 - alpha).
  double stationary_mean() const noexcept { return lambda_ / c_.complement; }

 private:
  double lambda_;
  Coefficient c_;
};

namespace mixing {

struct Degenerate {
  double alpha0;
};

// Beta(a + 1, beta + 1), i.e. density psi(x)(1-x)^beta with
// psi(x) = Gamma(a+beta+2) / (Gamma(a+1) Gamma(beta+1)) x^a.
struct Beta {
  double a;
  double beta;
};

// Density psi(x)(1-x)^beta for a user-supplied psi. psi receives x and 1 - x.
struct General {
  std::function<double(double x, double u)> psi;
  double beta;
  double psi1;
  double psi_sup;
};

// Finitely many atoms in (0, 1) with positive weights. Covers two-point and
// other discrete coefficient laws.
struct Atoms {
  std::vector<double> values;
  std::vector<double> weights;
};

}  // namespace mixing

class MixingLaw {
 public:
  using Variant =
      std::variant<mixing::Degenerate, mixing::Beta, mixing::General, mixing::Atoms>;

  static MixingLaw degenerate(double alpha0);
  static MixingLaw beta(double a, double beta);
  // Validates normalization, the limit at one and the envelope.
  static MixingLaw general(std::function<double(double x, double u)> psi,
                           double beta, double psi1, double psi_sup);
  static MixingLaw atoms(std::vector<double> values, std::vector<double> weights);

  const Variant& variant() const noexcept { return v_; }
  std::string kind() const;

  bool is_degenerate() const noexcept;
  // True for the Beta and General variants, which have a density.
  bool has_density() const noexcept;
  // The exponent beta of (1 - x)^beta, for variants with a density.
  std::optional<double> tail_exponent() const noexcept;
  std::optional<double> psi1() const noexcept;

  // Density psi(x)(1-x)^beta at x with complement u = 1 - x.
  double density(double x, double u) const;
  // psi(x) alone.
  double psi(double x, double u) const;

  // E (1 - alpha)^{-l} is finite. For densities this is beta > l - 1.
  bool inverse_moment_finite(double l) const noexcept;

  std::string describe() const;

 private:
  explicit MixingLaw(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

struct RandomizedModel {
  double lambda;
  MixingLaw mixing;

  RandomizedModel(double lambda, MixingLaw mixing);
};

}  // namespace inarlab
