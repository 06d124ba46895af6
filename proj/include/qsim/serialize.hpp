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

#include <nlohmann/json.hpp>

#include "qsim/observable.hpp"
#include "qsim/state.hpp"

namespace qsim {

// Matrices serialize row-major as {"dim": n, "matrix_re": [...], "matrix_im": [...]}.
// A pure state is the n x 1 column, so its arrays have n entries; density
// matrices and observables carry n * n entries. Every reader re-validates the
// invariants of the type it produces.

nlohmann::json to_json(const PureState& psi);
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json to_json(const Observable& obs);

PureState pure_state_from_json(const nlohmann::json& doc);
DensityMatrix density_matrix_from_json(const nlohmann::json& doc);
/// Re-runs spectral_decompose on the stored matrix.
Observable observable_from_json(const nlohmann::json& doc);

}  // namespace qsim
