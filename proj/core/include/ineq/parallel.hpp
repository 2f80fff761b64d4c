// Copyright 2026 The ineqkit Authors
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

namespace ineq {

/// Worker count for parallel sections: the INEQKIT_THREADS environment
/// variable when set to a positive integer, hardware concurrency otherwise.
std::size_t worker_count();

/// Runs body(0..n-1) across up to worker_count() threads. Tasks must be
/// independent; the first exception thrown by any task is rethrown on the
/// calling thread after all workers finish. Runs inline when n <= 1 or only
/// one worker is available.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ineq
