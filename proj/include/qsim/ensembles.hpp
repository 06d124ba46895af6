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

#include <vector>

#include "qsim/rng.hpp"
#include "qsim/state.hpp"
#include "qsim/types.hpp"

namespace qsim {

// Random test ensembles. Normal variates come from Box-Muller on
// RandomStream::uniform() so the ensembles are identical on every platform.

double standard_normal(RandomStream& rng);

/// Haar-random unitary (QR of a complex Ginibre matrix with phase fix).
Matrix random_unitary(long dim, RandomStream& rng);

/// Uniformly random unit vector in C^dim.
PureState random_state(long dim, RandomStream& rng);

/// Random unit vector in the span of the orthonormal columns of `basis`.
Vector random_unit_in_span(const Matrix& basis, RandomStream& rng);

/// U diag(spectrum) U^dagger for a Haar-random U.
Matrix random_hermitian_with_spectrum(const std::vector<double>& spectrum, RandomStream& rng);

/// Random Hermitian of the given dimension. With `with_degeneracy`, the
/// spectrum is drawn as a random partition of dim into groups sharing an
/// eigenvalue; otherwise it is a GUE-like matrix (A + A^dagger)/2.
Matrix random_hermitian(long dim, RandomStream& rng, bool with_degeneracy);

}  // namespace qsim
