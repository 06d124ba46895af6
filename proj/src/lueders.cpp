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

#include "qsim/lueders.hpp"

#include <algorithm>
#include <cmath>

#include "qsim/errors.hpp"
#include "qsim/serialize.hpp"

namespace qsim {
namespace {

void check_group(const Observable& obs, long k) {
  if (k < 0 || k >= obs.group_count()) {
    throw InvalidArgument("group index " + std::to_string(k) + " out of range");
  }
}

// <phi|P_k|phi> evaluated as sum_j |<psi_kj|phi>|^2, which is nonnegative by
// construction.
double born_probability(const PureState& state, const Observable& obs, long k) {
  return (obs.eigenbasis(k).adjoint() * state.amplitudes()).squaredNorm();
}

double trace_probability(const DensityMatrix& rho, const Observable& obs, long k) {
  const Matrix& b = obs.eigenbasis(k);
  return std::max(0.0, (b.adjoint() * rho.matrix() * b).trace().real());
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

std::vector<OutcomeProbability> outcome_probabilities(const PureState& state,
                                                      const Observable& obs) {
  require_same_dim(state.dim(), obs.dim(), "outcome_probabilities");
  std::vector<OutcomeProbability> out;
  out.reserve(static_cast<std::size_t>(obs.group_count()));
  for (long k = 0; k < obs.group_count(); ++k) {
    out.push_back({obs.eigenvalue(k), born_probability(state, obs, k)});
  }
  return out;
}

std::vector<OutcomeProbability> outcome_probabilities(const DensityMatrix& rho,
                                                      const Observable& obs) {
  require_same_dim(rho.dim(), obs.dim(), "outcome_probabilities");
  std::vector<OutcomeProbability> out;
  out.reserve(static_cast<std::size_t>(obs.group_count()));
  for (long k = 0; k < obs.group_count(); ++k) {
    out.push_back({obs.eigenvalue(k), trace_probability(rho, obs, k)});
  }
  return out;
}

PureState lueders_collapse(const PureState& state, const Observable& obs, long k) {
  require_same_dim(state.dim(), obs.dim(), "lueders_collapse");
  check_group(obs, k);
  const double prob = born_probability(state, obs, k);
  if (prob < kZeroProbability) {
    throw ZeroProbabilityOutcome("lueders_collapse: outcome has probability below 1e-14");
  }
  // Project through the eigenbasis rather than P_k so the result is exactly
  // a combination of range(P_k) vectors.
  const Matrix& b = obs.eigenbasis(k);
  Vector projected = b * (b.adjoint() * state.amplitudes());
  projected /= std::sqrt(prob);
  projected /= projected.norm();
  return PureState(std::move(projected));
}

DensityMatrix lueders_collapse_mixed(const DensityMatrix& rho, const Observable& obs, long k) {
  require_same_dim(rho.dim(), obs.dim(), "lueders_collapse_mixed");
  check_group(obs, k);
  const double prob = trace_probability(rho, obs, k);
  if (prob < kZeroProbability) {
    throw ZeroProbabilityOutcome("lueders_collapse_mixed: outcome has probability below 1e-14");
  }
  const Matrix& p = obs.projector(k);
  Matrix out = hermitian_part(p * rho.matrix() * p);
  out /= out.trace().real();
  return DensityMatrix(std::move(out));
}

DensityMatrix lueders_unread(const DensityMatrix& rho, const Observable& obs) {
  require_same_dim(rho.dim(), obs.dim(), "lueders_unread");
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (long k = 0; k < obs.group_count(); ++k) {
    const Matrix& p = obs.projector(k);
    out += p * rho.matrix() * p;
  }
  out = hermitian_part(out);
  out /= out.trace().real();
  return DensityMatrix(std::move(out));
}

long sample_index(std::span<const double> weights, double u) {
  if (weights.empty()) throw InvalidArgument("sample_index: no weights");
  double total = 0.0;
  for (double w : weights) total += w;
  const double target = u * total;
  double cumulative = 0.0;
  long last_positive = -1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = static_cast<long>(i);
    cumulative += weights[i];
    if (target < cumulative) return last_positive;
  }
  if (last_positive < 0) throw InvalidArgument("sample_index: all weights are zero");
  // Rounding left target at or past the final cumulative sum.
  return last_positive;
}

MeasurementOutcome measure(const PureState& state, const Observable& obs, RandomStream& rng) {
  require_same_dim(state.dim(), obs.dim(), "measure");
  const long groups = obs.group_count();
  std::vector<double> probs(static_cast<std::size_t>(groups));
  for (long k = 0; k < groups; ++k) {
    double p = born_probability(state, obs, k);
    // Outcomes below the impossibility threshold are never sampled.
    probs[static_cast<std::size_t>(k)] = p < kZeroProbability ? 0.0 : p;
  }
  const long k = sample_index(probs, rng.uniform());
  return {k, obs.eigenvalue(k), probs[static_cast<std::size_t>(k)],
          lueders_collapse(state, obs, k)};
}

MeasurementOutcome measure(const DensityMatrix& rho, const Observable& obs, RandomStream& rng) {
  require_same_dim(rho.dim(), obs.dim(), "measure");
  const long groups = obs.group_count();
  std::vector<double> probs(static_cast<std::size_t>(groups));
  for (long k = 0; k < groups; ++k) {
    double p = trace_probability(rho, obs, k);
    probs[static_cast<std::size_t>(k)] = p < kZeroProbability ? 0.0 : p;
  }
  const long k = sample_index(probs, rng.uniform());
  return {k, obs.eigenvalue(k), probs[static_cast<std::size_t>(k)],
          lueders_collapse_mixed(rho, obs, k)};
}

DensityMatrix von_neumann_measure_unread(const PureState& state, const Matrix& basis) {
  require_same_dim(state.dim(), basis.rows(), "von_neumann_measure_unread");
  if (basis.cols() != basis.rows()) {
    throw BasisNotOrthonormal("von_neumann_measure_unread: basis does not span the space");
  }
  if (orthonormality_defect(basis) > kOrthonormalTol) {
    throw BasisNotOrthonormal("von_neumann_measure_unread: basis is not orthonormal");
  }
  const Eigen::VectorXd weights = (basis.adjoint() * state.amplitudes()).cwiseAbs2();
  Matrix out = basis * weights.cast<Complex>().asDiagonal() * basis.adjoint();
  out = hermitian_part(out);
  out /= out.trace().real();
  return DensityMatrix(std::move(out));
}

nlohmann::json to_json(const MeasurementOutcome& outcome) {
  nlohmann::json post = std::visit([](const auto& s) { return to_json(s); }, outcome.post_state);
  return {{"k", outcome.group_index},
          {"eigenvalue", outcome.eigenvalue},
          {"probability", outcome.probability},
          {"post_state", post}};
}

}  // namespace qsim
