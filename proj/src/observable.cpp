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

#include "qsim/observable.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qsim/errors.hpp"

namespace qsim {

std::vector<long> Observable::degeneracies() const {
  std::vector<long> out;
  out.reserve(bases_.size());
  for (const auto& b : bases_) out.push_back(b.cols());
  return out;
}

Matrix projector_from_basis(const Matrix& basis) { return basis * basis.adjoint(); }

double orthonormality_defect(const Matrix& basis) {
  const long n = basis.cols();
  if (n == 0) return 0.0;
  const Matrix gram = basis.adjoint() * basis;
  return max_abs_diff(gram, Matrix::Identity(n, n));
}

void reorthonormalize(Matrix& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (long j = 0; j < basis.cols(); ++j) {
      for (long i = 0; i < j; ++i) {
        const Complex c = basis.col(i).dot(basis.col(j));
        basis.col(j) -= c * basis.col(i);
      }
      const double n = basis.col(j).norm();
      if (n < kZeroNorm) throw BasisNotOrthonormal("reorthonormalize: linearly dependent columns");
      basis.col(j) /= n;
    }
  }
}

Observable Observable::from_eigenspaces(std::vector<Eigenspace> spaces) {
  if (spaces.empty()) throw InvalidArgument("Observable: no eigenspaces given");
  std::sort(spaces.begin(), spaces.end(),
            [](const Eigenspace& a, const Eigenspace& b) { return a.eigenvalue < b.eigenvalue; });

  const long dim = spaces.front().basis.rows();
  long total = 0;
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    const auto& s = spaces[k];
    if (s.basis.rows() != dim) {
      throw DimensionMismatch("Observable: eigenspace bases have different dimensions");
    }
    if (s.basis.cols() < 1) throw InvalidArgument("Observable: empty eigenspace");
    if (!std::isfinite(s.eigenvalue)) throw InvalidArgument("Observable: non-finite eigenvalue");
    if (k > 0 && !(spaces[k - 1].eigenvalue < s.eigenvalue)) {
      throw InvalidArgument("Observable: eigenvalues must be distinct");
    }
    total += s.basis.cols();
  }
  if (total != dim) {
    throw BasisNotOrthonormal("Observable: eigenspaces do not span the space (" +
                              std::to_string(total) + " vectors for dimension " +
                              std::to_string(dim) + ")");
  }

  Matrix all(dim, dim);
  long col = 0;
  for (const auto& s : spaces) {
    all.middleCols(col, s.basis.cols()) = s.basis;
    col += s.basis.cols();
  }
  if (orthonormality_defect(all) > kOrthonormalTol) {
    throw BasisNotOrthonormal("Observable: eigenvectors are not orthonormal");
  }
  reorthonormalize(all);

  Observable obs;
  obs.matrix_ = Matrix::Zero(dim, dim);
  col = 0;
  for (const auto& s : spaces) {
    Matrix basis = all.middleCols(col, s.basis.cols());
    col += s.basis.cols();
    Matrix p = projector_from_basis(basis);
    p = 0.5 * (p + p.adjoint()).eval();
    obs.matrix_ += s.eigenvalue * p;
    obs.eigenvalues_.push_back(s.eigenvalue);
    obs.bases_.push_back(std::move(basis));
    obs.projectors_.push_back(std::move(p));
  }
  return obs;
}

Observable spectral_decompose(const Matrix& hermitian, std::optional<double> tol_degen) {
  if (hermitian.rows() < 1 || hermitian.rows() != hermitian.cols()) {
    throw InvalidArgument("spectral_decompose: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, hermitian.cwiseAbs().maxCoeff());
  if (max_abs_diff(hermitian, hermitian.adjoint()) > kHermitianTol * scale) {
    throw NotHermitian("spectral_decompose: matrix is not Hermitian");
  }
  const Matrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("spectral_decompose: eigensolver did not converge");
  }
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  Matrix vectors = solver.eigenvectors();
  reorthonormalize(vectors);

  const double radius = values.cwiseAbs().maxCoeff();
  const double tol = tol_degen.value_or(1e-10 * std::max(1.0, radius));
  if (!(tol > 0.0)) throw InvalidArgument("spectral_decompose: tol_degen must be positive");

  std::vector<Eigenspace> spaces;
  const long n = values.size();
  long start = 0;
  for (long i = 1; i <= n; ++i) {
    if (i == n || values(i) - values(i - 1) > tol) {
      const long count = i - start;
      const double mean = values.segment(start, count).mean();
      spaces.push_back({mean, vectors.middleCols(start, count)});
      start = i;
    }
  }
  return Observable::from_eigenspaces(std::move(spaces));
}

Observable identity_observable(long dim) {
  return Observable::from_eigenspaces({{1.0, Matrix::Identity(dim, dim)}});
}

Observable j_observable(double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("j_observable: delta must be positive");
  return Observable::from_eigenspaces({{1.0, Matrix(Vector::Unit(2, 0))},
                                       {1.0 + delta, Matrix(Vector::Unit(2, 1))}});
}

}  // namespace qsim
