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

#include <span>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsim/observable.hpp"
#include "qsim/rng.hpp"
#include "qsim/state.hpp"

namespace qsim {

struct OutcomeProbability {
  double eigenvalue;
  double probability;
};

struct MeasurementOutcome {
  long group_index;
  double eigenvalue;
  double probability;
  std::variant<PureState, DensityMatrix> post_state;
};

/// Prob[O = lambda_k] = <phi|P_k|phi>, ordered by group index.
std::vector<OutcomeProbability> outcome_probabilities(const PureState& state,
                                                      const Observable& obs);
/// tr(P_k rho), ordered by group index.
std::vector<OutcomeProbability> outcome_probabilities(const DensityMatrix& rho,
                                                      const Observable& obs);

/// Lueders reduction P_k|phi> / sqrt(Prob[lambda_k]). Throws
/// ZeroProbabilityOutcome when Prob[lambda_k] < 1e-14.
PureState lueders_collapse(const PureState& state, const Observable& obs, long k);

/// P_k rho P_k / tr(P_k rho).
DensityMatrix lueders_collapse_mixed(const DensityMatrix& rho, const Observable& obs, long k);

/// Unread Lueders channel: sum_k P_k rho P_k.
DensityMatrix lueders_unread(const DensityMatrix& rho, const Observable& obs);

/// Picks index i with probability weights[i] using one uniform draw
/// (inverse CDF). Entries with zero weight are never selected.
long sample_index(std::span<const double> weights, double u);

/// Samples an outcome with one uniform draw and collapses onto it.
MeasurementOutcome measure(const PureState& state, const Observable& obs, RandomStream& rng);
MeasurementOutcome measure(const DensityMatrix& rho, const Observable& obs, RandomStream& rng);

/// Unread von Neumann measurement in a full orthonormal basis (columns):
/// sum_i |<b_i|phi>|^2 |b_i><b_i|. Throws BasisNotOrthonormal if the columns
/// are not orthonormal within 1e-10 or do not span the space.
DensityMatrix von_neumann_measure_unread(const PureState& state, const Matrix& basis);

nlohmann::json to_json(const MeasurementOutcome& outcome);

}  // namespace qsim
