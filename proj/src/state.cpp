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

#include "qsim/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsim/errors.hpp"

namespace qsim {

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) {
    throw InvariantViolation("PureState: dimension must be at least 1");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw InvariantViolation("PureState: squared norm " + std::to_string(norm2) +
                             " is not 1");
  }
}

Complex PureState::inner(const PureState& other) const {
  require_same_dim(dim(), other.dim(), "inner product");
  return amplitudes_.dot(other.amplitudes_);  // conjugates the left operand
}

Matrix PureState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

NormalizedState make_pure_state(const Vector& amplitudes) {
  if (amplitudes.size() < 1) {
    throw ZeroVector("make_pure_state: empty amplitude vector");
  }
  const double norm = amplitudes.norm();
  if (!(norm >= kZeroNorm)) {
    throw ZeroVector("make_pure_state: norm below 1e-14");
  }
  std::optional<double> applied;
  if (std::abs(norm - 1.0) > 1e-9) applied = norm;
  Vector v = amplitudes / norm;
  // One more pass so the stored norm is 1 to rounding.
  v /= v.norm();
  return {PureState(std::move(v)), applied};
}

NormalizedState make_pure_state(std::span<const Complex> amplitudes) {
  Vector v(static_cast<long>(amplitudes.size()));
  std::copy(amplitudes.begin(), amplitudes.end(), v.data());
  return make_pure_state(v);
}

double fidelity(const PureState& a, const PureState& b) {
  require_same_dim(a.dim(), b.dim(), "fidelity");
  // |z|^2 is symmetric under z -> conj(z), so swapping arguments is exact.
  return std::norm(a.inner(b));
}

DensityMatrix::DensityMatrix(Matrix rho) : matrix_(std::move(rho)) {
  if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols()) {
    throw InvariantViolation("DensityMatrix: matrix must be square and non-empty");
  }
  if (max_abs_diff(matrix_, matrix_.adjoint()) > kHermitianTol) {
    throw InvariantViolation("DensityMatrix: matrix is not Hermitian");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0)) > kTraceTol) {
    throw InvariantViolation("DensityMatrix: trace is not 1");
  }
  const Matrix herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPsdTol) {
    throw InvariantViolation("DensityMatrix: matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector(), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(long dim) {
  if (dim < 1) throw InvalidArgument("maximally_mixed: dimension must be at least 1");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim), Unchecked{});
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
  return matrix_.cwiseAbs2().sum();
}

double DensityMatrix::expectation(const PureState& psi) const {
  require_same_dim(dim(), psi.dim(), "expectation");
  return psi.amplitudes().dot(matrix_ * psi.amplitudes()).real();
}

PureState ket_one() { return PureState(Vector::Unit(2, 0)); }
PureState ket_zero() { return PureState(Vector::Unit(2, 1)); }

PureState ket_plus() {
  Vector v(2);
  v << M_SQRT1_2, M_SQRT1_2;
  return make_pure_state(v).state;
}

PureState ket_minus() {
  Vector v(2);
  v << M_SQRT1_2, -M_SQRT1_2;
  return make_pure_state(v).state;
}

}  // namespace qsim
