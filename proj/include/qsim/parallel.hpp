/* Copyright 2026 The qsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qsim {

/// Selects the trial loop implementation. The serial loop is the reference;
/// the parallel loop must reproduce its tallies exactly.
enum class Execution { serial, parallel };

/// Folds `body(i, tally)` over i in [0, n). Tally must be default
/// constructible and merge with operator+=. Because every trial owns its own
/// random stream and tallies are integer counts, the result does not depend
/// on how trials are split across threads.
template <class Tally, class Body>
Tally reduce_trials(std::uint64_t n, Execution exec, Body&& body) {
  Tally total{};
  if (exec == Execution::serial) {
    for (std::uint64_t i = 0; i < n; ++i) body(i, total);
    return total;
  }
  const auto count = static_cast<std::int64_t>(n);
  std::exception_ptr failure;
#pragma omp parallel
  {
    Tally local{};
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        body(static_cast<std::uint64_t>(i), local);
      } catch (...) {
#pragma omp critical(qsim_reduce_failure)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(qsim_reduce_trials)
    total += local;
  }
  if (failure) std::rethrow_exception(failure);
  return total;
}

inline int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qsim
