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

#include <cmath>
#include <vector>

#include "qsim/types.hpp"

namespace qsim::testing {

inline Vector vec2(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return v;
}

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Largest |v_i - w_i| up to a global phase, after aligning the phase of the
// largest component of w.
inline double ray_distance(const Vector& v, const Vector& w) {
  Eigen::Index idx = 0;
  w.cwiseAbs().maxCoeff(&idx);
  const Complex phase = v(idx) / w(idx);
  const Complex unit = phase / std::abs(phase);
  return (v - unit * w).cwiseAbs().maxCoeff();
}

}  // namespace qsim::testing
