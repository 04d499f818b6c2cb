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

// Experiment configuration files and mixing-law specifications.

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "inarlab/model.hpp"
#include "inarlab/verification.hpp"

namespace inarlab {

inline constexpr int kFormatVersion = 1;

// "degenerate:ALPHA", "beta:A,BETA" or "atoms:V@W,V@W,...".
MixingLaw parse_mixing_spec(std::string_view spec);

struct SuiteRequest {
  Regime regime;
  IterationOrder order = IterationOrder::kNFirst;
  std::vector<long> N_ladder;
  std::vector<long> n_ladder;
  long replicates = 0;
};

struct ExperimentConfig {
  double lambda = 1.0;
  std::string mixing_spec;
  MixingLaw mixing = MixingLaw::degenerate(0.5);
  std::vector<SuiteRequest> suites;
  SuiteOptions defaults;  // grids, replicates, gate, seed, budget
  std::string output_dir = ".";
  nlohmann::json source;  // the parsed document, echoed into reports

  RandomizedModel model() const { return RandomizedModel(lambda, mixing); }
  // Options for one suite.
  SuiteOptions options_for(const SuiteRequest& s) const;
};

// Validates every field before returning. All violations are collected into
// one ErrorCode::kConfig error.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig load_config(const std::string& path);

}  // namespace inarlab
