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

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <numbers>

#include "qsim/observable.hpp"
#include "qsim/parallel.hpp"
#include "qsim/protocol.hpp"
#include "qsim/rng.hpp"
#include "qsim/state.hpp"
#include "qsim/stats.hpp"

namespace qsim {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kQuarterPi = std::numbers::pi / 4.0;
inline constexpr double kDefaultNoiseGap = 1e-9;

/// Eigenbasis of an accidentally nondegenerate implementation of the
/// identity:
///   first  = cos(a)|+> + sin(a)|->
///   second = sin(a)|+> - cos(a)|->
struct AngleParametrizedObservable {
  double alpha;
  PureState first;
  PureState second;
};

/// Throws AngleOutOfRange unless alpha lies in [0, pi/2].
AngleParametrizedObservable angle_parametrized(double alpha);

/// Nondegenerate qubit observable with eigenvalue 1 on `first` and
/// 1 + gap on `second`. The gap only labels outcomes.
Observable perturbed_observable(double alpha, double gap = kDefaultNoiseGap);

/// cos^4(a) + sin^4(a): probability that |+>, measured by
/// perturbed_observable(a) and then in the interference basis, gives plus.
double plus_probability_given_alpha(double alpha);

/// Distribution of the eigenbasis angle on [0, pi/2]: uniform, or the
/// von Mises density exp(q^2 cos(a - mean)) truncated to [0, pi/2] and
/// renormalized. Sampling goes through a 4096-point cumulative table built
/// at construction; the model is immutable afterwards and safe to share.
class NoiseModel {
 public:
  enum class Kind { uniform, von_mises };

  static NoiseModel uniform();
  /// Throws InvalidArgument for q < 0 or a mean outside [0, pi/2].
  static NoiseModel von_mises(double q, double alpha_mean = kQuarterPi);

  Kind kind() const { return kind_; }
  double q() const { return q_; }
  double alpha_mean() const { return alpha_mean_; }

  /// Normalized density on [0, pi/2]; zero outside.
  double density(double alpha) const;

  /// Inverse-CDF draw using one uniform.
  double sample(RandomStream& rng) const;
  double inverse_cdf(double u) const;

  /// Piecewise-linear CDF represented by the lookup table.
  double table_cdf(double alpha) const;

  static constexpr std::size_t kTablePoints = 4096;

 private:
  NoiseModel(Kind kind, double q, double alpha_mean);

  // exp(q^2 (cos(a - mean) - 1)), the density up to normalization.
  double shifted_weight(double alpha) const;

  Kind kind_;
  double q_ = 0.0;
  double alpha_mean_ = kQuarterPi;
  double normalizer_ = 1.0;  // integral of shifted_weight over [0, pi/2]
  std::shared_ptr<const std::vector<double>> cdf_;  // at alpha_i = i * pi/2 / 4095
};

double sample_alpha(const NoiseModel& model, RandomStream& rng);

/// Integral over [0, pi/2] of density(a) * (cos^4 a + sin^4 a), by composite
/// Simpson with doubling until successive estimates differ by < 1e-10.
double average_plus_probability(const NoiseModel& model);

struct PlusFraction {
  std::uint64_t plus = 0;
  std::uint64_t samples = 0;
  PlusFraction& operator+=(const PlusFraction& o) {
    plus += o.plus;
    samples += o.samples;
    return *this;
  }
  bool operator==(const PlusFraction&) const = default;
  double fraction() const { return static_cast<double>(plus) / static_cast<double>(samples); }
};

/// Samples per random stream in the sampled-chain kernels. Fixed so that
/// the split of work never depends on the thread count.
inline constexpr std::uint64_t kChainChunk = 4096;

/// Runs |+> -> measure(obs) -> interference_measure `samples` times.
PlusFraction simulate_chain(const Observable& obs, std::uint64_t samples, std::uint64_t seed,
                            Execution exec = Execution::parallel);

/// Same chain with a fresh angle from `model` for every sample.
PlusFraction simulate_noisy_chain(const NoiseModel& model, std::uint64_t samples,
                                  std::uint64_t seed, Execution exec = Execution::parallel,
                                  double gap = kDefaultNoiseGap);

/// How one hypothesis is realized in the lab: an ideal observable, or a
/// perturbed observable whose angle is drawn from a noise model.
struct HypothesisModel {
  Observable ideal;
  std::optional<NoiseModel> noise;

  /// Predicted probability of plus per copy.
  double plus_probability() const;
};

struct NoisyDiscriminationConfig {
  int m = 1;
  double epsilon = 0.05;
  double prior_j = 0.5;
  std::uint64_t seed = 0;
  bool frozen_noise = false;  // one angle per trial instead of per copy
  double gap = kDefaultNoiseGap;
};

struct NoisyTally {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  std::uint64_t truth_j = 0;
  std::uint64_t plus_outcomes = 0;
  NoisyTally& operator+=(const NoisyTally& o);
  bool operator==(const NoisyTally&) const = default;
};

struct NoisyDiscriminationReport {
  double p_i;
  double p_j;
  double threshold;  // midpoint of p_i and p_j
  int m_bound;       // ceil(2 ln(2/eps) / (p_i - p_j)^2)
  NoisyTally tally;
  double empirical_error;
  Interval ci;
};

/// Sample size at which Hoeffding's inequality bounds the error of the
/// midpoint test by epsilon / 2.
int hoeffding_copies(double p_i, double p_j, double epsilon);

/// Runs the discrimination protocol with possibly noisy hypotheses and the
/// midpoint test on the plus fraction: I is declared iff the fraction lies
/// strictly on p_i's side of the midpoint. Throws IndistinguishableHypotheses
/// if |p_i - p_j| < 1e-6.
NoisyDiscriminationReport noisy_discrimination(const HypothesisModel& hyp_i,
                                               const HypothesisModel& hyp_j,
                                               const NoisyDiscriminationConfig& cfg,
                                               std::uint64_t trials,
                                               Execution exec = Execution::parallel);

}  // namespace qsim
