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

namespace qsim {

struct Interval {
  double low;
  double high;
};

/// Two-sided standard normal quantile: z with P(|Z| <= z) = confidence.
double normal_two_sided_z(double confidence);

/// Wilson score interval for a binomial proportion. Requires
/// 0 <= successes <= trials and trials >= 1; confidence in (0, 1).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence = 0.95);

/// sqrt(p (1 - p) / n)
double binomial_stderr(double p, std::uint64_t n);

/// |empirical - reference| / sigma, or 0 when both sigma and the difference
/// vanish. An exact mismatch with sigma = 0 yields +infinity.
double deviation_in_sigmas(double empirical, double reference, double sigma);

}  // namespace qsim
