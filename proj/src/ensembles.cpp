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

#include "qsim/ensembles.hpp"

#include <cmath>
#include <numbers>

#include "qsim/errors.hpp"

namespace qsim {

double standard_normal(RandomStream& rng) {
  // 1 - u lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

Matrix ginibre(long rows, long cols, RandomStream& rng) {
  Matrix g(rows, cols);
  for (long j = 0; j < cols; ++j) {
    for (long i = 0; i < rows; ++i) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      g(i, j) = Complex(re, im) * M_SQRT1_2;
    }
  }
  return g;
}

}  // namespace

Matrix random_unitary(long dim, RandomStream& rng) {
  if (dim < 1) throw InvalidArgument("random_unitary: dim must be at least 1");
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

PureState random_state(long dim, RandomStream& rng) {
  return make_pure_state(Vector(ginibre(dim, 1, rng).col(0))).state;
}

Vector random_unit_in_span(const Matrix& basis, RandomStream& rng) {
  const Vector coeffs = ginibre(basis.cols(), 1, rng).col(0);
  Vector v = basis * coeffs;
  return v / v.norm();
}

Matrix random_hermitian_with_spectrum(const std::vector<double>& spectrum, RandomStream& rng) {
  const long dim = static_cast<long>(spectrum.size());
  const Matrix u = random_unitary(dim, rng);
  Eigen::VectorXd d(dim);
  for (long i = 0; i < dim; ++i) d(i) = spectrum[static_cast<std::size_t>(i)];
  Matrix h = u * d.cast<Complex>().asDiagonal() * u.adjoint();
  return 0.5 * (h + h.adjoint());
}

Matrix random_hermitian(long dim, RandomStream& rng, bool with_degeneracy) {
  if (!with_degeneracy) {
    const Matrix a = ginibre(dim, dim, rng);
    return 0.5 * (a + a.adjoint());
  }
  std::vector<double> spectrum;
  spectrum.reserve(static_cast<std::size_t>(dim));
  long remaining = dim;
  double level = -3.0 + 2.0 * rng.uniform();
  while (remaining > 0) {
    const long size = 1 + static_cast<long>(rng.uniform() * static_cast<double>(remaining));
    for (long i = 0; i < size; ++i) spectrum.push_back(level);
    remaining -= size;
    // Distinct levels stay at least 0.25 apart.
    level += 0.25 + 2.0 * rng.uniform();
  }
  return random_hermitian_with_spectrum(spectrum, rng);
}

}  // namespace qsim
