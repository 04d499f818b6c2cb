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

#include "inarlab/error.hpp"

namespace inarlab {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kNumeric: return "numeric";
    case ErrorCode::kSampling: return "sampling";
    case ErrorCode::kTruncation: return "truncation";
    case ErrorCode::kStatistics: return "statistics";
    case ErrorCode::kCapability: return "capability";
    case ErrorCode::kBudget: return "budget";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace inarlab
