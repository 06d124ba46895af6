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
#include <vector>

#include "qsim/types.hpp"

namespace qsim {

/// One degenerate eigenspace: an eigenvalue and an orthonormal basis of its
/// span stored as matrix columns.
struct Eigenspace {
  double eigenvalue;
  Matrix basis;  // dim x degeneracy
};

/// Hermitian operator held in spectral form. Eigenvalues are distinct and
/// ascending; projector(k) is the orthogonal projector onto eigenspace k,
/// built as the sum of |psi_kj><psi_kj| over the basis of that space.
class Observable {
 public:
  /// Builds an observable from explicit eigenspaces. The bases must be
  /// jointly orthonormal within 1e-10 and span the space; eigenvalues must be
  /// distinct. Spaces are reordered by ascending eigenvalue.
  static Observable from_eigenspaces(std::vector<Eigenspace> spaces);

  long dim() const { return static_cast<long>(matrix_.rows()); }
  /// Number of distinct eigenvalues K.
  long group_count() const { return static_cast<long>(eigenvalues_.size()); }

  double eigenvalue(long k) const { return eigenvalues_.at(static_cast<std::size_t>(k)); }
  long degeneracy(long k) const { return bases_.at(static_cast<std::size_t>(k)).cols(); }
  const Matrix& eigenbasis(long k) const { return bases_.at(static_cast<std::size_t>(k)); }
  const Matrix& projector(long k) const { return projectors_.at(static_cast<std::size_t>(k)); }

  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  std::vector<long> degeneracies() const;

  /// sum_k lambda_k P_k
  const Matrix& matrix() const { return matrix_; }

 private:
  Observable() = default;

  std::vector<double> eigenvalues_;
  std::vector<Matrix> bases_;
  std::vector<Matrix> projectors_;
  Matrix matrix_;
};

/// Diagonalizes a Hermitian matrix and groups eigenvalues whose consecutive
/// gap is <= tol_degen into one degenerate eigenspace whose eigenvalue is the
/// group mean. The default tolerance is 1e-10 * max(1, spectral radius).
/// Throws NotHermitian if |H - H^dagger| exceeds 1e-12 * max(1, max|H_ij|).
Observable spectral_decompose(const Matrix& hermitian,
                              std::optional<double> tol_degen = std::nullopt);

/// Projector onto the span of the given orthonormal columns.
Matrix projector_from_basis(const Matrix& basis);

/// Largest |<b_i|b_j> - delta_ij| over the columns of `basis`.
double orthonormality_defect(const Matrix& basis);

/// Orthonormalizes columns in place by two passes of modified Gram-Schmidt.
void reorthonormalize(Matrix& basis);

/// The identity observable on C^2.
Observable identity_observable(long dim = 2);
/// diag(1, 1 + delta): eigenvalue 1 on |1>, 1 + delta on |0>.
Observable j_observable(double delta);

}  // namespace qsim
