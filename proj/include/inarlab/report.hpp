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

// JSON forms of analytic results and verification reports.

#include <json.hpp>
#include <optional>

#include "inarlab/analytics.hpp"
#include "inarlab/config.hpp"
#include "inarlab/verification.hpp"

namespace inarlab {

nlohmann::json to_json(const LimitConstants& c);
nlohmann::json to_json(const MarkovGapReport& r);
nlohmann::json to_json(const CfReport& r);
nlohmann::json to_json(const CovReport& r);
nlohmann::json to_json(const KsReport& r);
nlohmann::json to_json(const SuiteReport& r, bool with_samples = false);
nlohmann::json to_json(const CalibrationReport& r);
nlohmann::json to_json(const SampleMatrix& m);

// Generator and stream derivation used for a run with this seed.
nlohmann::json rng_provenance(std::uint64_t seed);

struct VerificationRun {
  nlohmann::json report;  // format_version, config echo, suites, timing, RNG
  std::vector<SuiteReport> suites;
  bool all_pass = false;
};

// Runs every configured suite, or only those of one regime. When the filter
// names a regime absent from the configuration, one suite with the default
// ladders is added for it.
VerificationRun run_verification(const ExperimentConfig& config,
                                 std::optional<Regime> only = std::nullopt);

}  // namespace inarlab
