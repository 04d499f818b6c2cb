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

#include <cstddef>
#include <functional>

namespace inarlab {

// Worker count: INARLAB_THREADS if set to a positive integer, otherwise the
// hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, count) on up to worker_count() threads. Indices
// are handed out dynamically; results must not depend on which thread runs
// which index. The first exception thrown by any body is rethrown after all
// workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace inarlab
