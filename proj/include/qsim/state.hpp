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

#include <optional>
#include <span>

#include "qsim/types.hpp"

namespace qsim {

/// Normalized state vector. Construction always validates the norm, so a
/// PureState in hand is a unit vector of dimension >= 1.
class PureState {
 public:
  /// Throws InvariantViolation unless |amplitudes| = 1 within kNormTol.
  explicit PureState(Vector amplitudes);

  long dim() const { return static_cast<long>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](long i) const { return amplitudes_(i); }

  /// <this|other>
  Complex inner(const PureState& other) const;

  /// |this><this|
  Matrix projector() const;

 private:
  Vector amplitudes_;
};

struct NormalizedState {
  PureState state;
  // Set when the input norm differed from 1 by more than 1e-9.
  std::optional<double> applied_norm;
};

/// Normalizes `amplitudes`; throws ZeroVector if the norm is below 1e-14.
NormalizedState make_pure_state(const Vector& amplitudes);
NormalizedState make_pure_state(std::span<const Complex> amplitudes);

/// |<a|b>|^2, symmetric in its arguments.
double fidelity(const PureState& a, const PureState& b);

/// Density operator: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  /// Validates every invariant, throwing InvariantViolation on failure.
  explicit DensityMatrix(Matrix rho);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(long dim);

  long dim() const { return static_cast<long>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  Complex operator()(long i, long j) const { return matrix_(i, j); }

  /// tr(rho^2)
  double purity() const;

  /// <psi|rho|psi>
  double expectation(const PureState& psi) const;

 private:
  struct Unchecked {};
  DensityMatrix(Matrix rho, Unchecked) : matrix_(std::move(rho)) {}

  Matrix matrix_;
};

// Computational basis of the spin-1/2 system. |1> is spin-up and is the
// first basis vector; |0> is spin-down.
PureState ket_one();
PureState ket_zero();
/// (|1> + |0>)/sqrt(2)
PureState ket_plus();
/// (|1> - |0>)/sqrt(2)
PureState ket_minus();

}  // namespace qsim
