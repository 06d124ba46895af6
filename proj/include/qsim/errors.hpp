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

#include <stdexcept>
#include <string>

namespace qsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QSIM_DEFINE_ERROR(Name)        \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

QSIM_DEFINE_ERROR(ZeroVector);
QSIM_DEFINE_ERROR(NotHermitian);
QSIM_DEFINE_ERROR(DimensionMismatch);
QSIM_DEFINE_ERROR(ZeroProbabilityOutcome);
QSIM_DEFINE_ERROR(BasisNotOrthonormal);
QSIM_DEFINE_ERROR(AngleOutOfRange);
QSIM_DEFINE_ERROR(IndistinguishableHypotheses);
QSIM_DEFINE_ERROR(InvalidArgument);
QSIM_DEFINE_ERROR(InvariantViolation);
QSIM_DEFINE_ERROR(ParseError);

#undef QSIM_DEFINE_ERROR

inline void require_same_dim(long a, long b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                            " does not match " + std::to_string(b));
  }
}

}  // namespace qsim
