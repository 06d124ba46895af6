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
#include <functional>

namespace qsim {

struct QuadratureResult {
  double value;
  std::uint64_t intervals;  // subintervals in the final composite rule
  bool converged;
};

/// Composite Simpson rule on [a, b] with 2, 4, 8, ... subintervals. Doubling
/// reuses every previous node and stops once two successive estimates differ
/// by less than `tol` (and at least `min_intervals` are in use). Gives up with
/// converged = false after `max_intervals`.
QuadratureResult simpson_until_stable(const std::function<double(double)>& f, double a, double b,
                                      double tol = 1e-10, std::uint64_t min_intervals = 16,
                                      std::uint64_t max_intervals = std::uint64_t{1} << 24);

/// Single composite Simpson estimate with `intervals` (even) subintervals.
double simpson(const std::function<double(double)>& f, double a, double b,
               std::uint64_t intervals);

}  // namespace qsim
