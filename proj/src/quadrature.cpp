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

#include "qsim/quadrature.hpp"

#include <cmath>

#include "qsim/errors.hpp"

namespace qsim {

double simpson(const std::function<double(double)>& f, double a, double b,
               std::uint64_t intervals) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw InvalidArgument("simpson: interval count must be even and >= 2");
  }
  const double h = (b - a) / static_cast<double>(intervals);
  double odd = 0.0;
  double even = 0.0;
  for (std::uint64_t i = 1; i < intervals; ++i) {
    const double x = a + h * static_cast<double>(i);
    (i % 2 ? odd : even) += f(x);
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

QuadratureResult simpson_until_stable(const std::function<double(double)>& f, double a, double b,
                                      double tol, std::uint64_t min_intervals,
                                      std::uint64_t max_intervals) {
  // Nodes of the n-interval rule split into endpoints, interior nodes shared
  // with the n/2 rule ("even"), and the new midpoints ("odd"). On doubling,
  // all previous interior nodes become even nodes.
  const double ends = f(a) + f(b);
  std::uint64_t n = 2;
  double even = 0.0;
  double odd = f(0.5 * (a + b));
  double estimate = (b - a) / 6.0 * (ends + 4.0 * odd);
  while (n < max_intervals) {
    even += odd;
    n *= 2;
    const double h = (b - a) / static_cast<double>(n);
    odd = 0.0;
    for (std::uint64_t i = 1; i < n; i += 2) odd += f(a + h * static_cast<double>(i));
    const double next = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    const double change = std::abs(next - estimate);
    estimate = next;
    if (n >= min_intervals && change < tol) return {estimate, n, true};
  }
  return {estimate, n, false};
}

}  // namespace qsim
