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
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "qsim/observable.hpp"
#include "qsim/parallel.hpp"
#include "qsim/rng.hpp"
#include "qsim/state.hpp"
#include "qsim/stats.hpp"

namespace qsim {

enum class Hypothesis { I, J };
enum class Interference { plus, minus };

std::string_view to_string(Hypothesis h);
char to_char(Interference o);  // '+' or '-'

using DecisionRule = Hypothesis (*)(std::span<const Interference>);

/// Declares J as soon as any copy shows minus; otherwise I.
Hypothesis decide_any_minus(std::span<const Interference> outcomes);

struct DiscriminationConfig {
  double delta = 0.1;    // spectral gap of J
  int m = 1;             // copies per trial
  double prior_j = 0.5;  // probability the black box holds J
  std::uint64_t seed = 0;
  bool early_stop = false;  // halt a trial at its first minus
  DecisionRule rule = &decide_any_minus;

  /// Throws InvalidArgument unless delta > 0, m >= 1, prior_j in (0, 1).
  void validate() const;
};

struct TrialRecord {
  Hypothesis truth;
  // Eigenvalue read by the first apparatus for each copy. Kept for the
  // record only; the decision never looks at it.
  std::vector<double> first_eigenvalues;
  std::vector<Interference> outcomes;
  Hypothesis decision;
  bool correct;
};

/// The identity and diag(1, 1 + delta), built once per run.
struct ProtocolObservables {
  Observable identity;
  Observable j;
  static ProtocolObservables make(double delta);
  const Observable& operator[](Hypothesis h) const { return h == Hypothesis::I ? identity : j; }
};

/// Observable with eigenvalue +1 on |+> and -1 on |->.
const Observable& interference_observable();

/// Projective measurement in the {|+>, |->} basis with one uniform draw.
/// Throws DimensionMismatch for anything but a qubit.
Interference interference_measure(const PureState& state, RandomStream& rng);
Interference interference_measure(const DensityMatrix& rho, RandomStream& rng);

/// One trial: m copies of |+>, each measured by the true observable and
/// then in the interference basis.
TrialRecord run_trial(const DiscriminationConfig& cfg, Hypothesis truth, RandomStream& rng);
TrialRecord run_trial(const ProtocolObservables& observables, const DiscriminationConfig& cfg,
                      Hypothesis truth, RandomStream& rng);

/// prior_j * 2^-m; 2^-(m+1) at equal priors. Only J is ever misidentified.
double analytic_error_probability(int m, double prior_j = 0.5);

/// Smallest m >= 1 with analytic_error_probability(m, prior_j) <= epsilon.
int required_copies(double epsilon, double prior_j = 0.5);

/// Exact probability that |+>, measured by `obs` under the Lueders rule and
/// then in the interference basis, yields plus. Sums over outcome branches.
double chain_plus_probability(const Observable& obs);

struct EnumeratedError {
  double given_i;
  double given_j;
  double total;  // prior-weighted
};

/// Exhaustive enumeration of all 2^m interference strings, weighting each by
/// its exact Born probability under each hypothesis. Requires m <= 24.
EnumeratedError enumerate_error_probability(const DiscriminationConfig& cfg);

struct DiscriminationTally {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  std::uint64_t truth_j = 0;
  std::uint64_t errors_given_j = 0;
  std::uint64_t errors_given_i = 0;
  std::uint64_t copies_used = 0;
  std::uint64_t minus_outcomes = 0;

  DiscriminationTally& operator+=(const DiscriminationTally& o);
  void add(const TrialRecord& record);
  bool operator==(const DiscriminationTally&) const = default;
};

struct DiscriminationReport {
  DiscriminationConfig config;
  std::optional<Hypothesis> fixed_truth;
  DiscriminationTally tally;
  double empirical_error;
  Interval ci;  // Wilson 95%
  double analytic_error;
  double stderr_analytic;  // binomial sigma at the analytic rate
  double sigmas;           // |empirical - analytic| / stderr_analytic
};

struct MonteCarloOptions {
  std::optional<Hypothesis> fixed_truth;  // otherwise drawn from the prior
  Execution execution = Execution::parallel;
};

/// Trial i uses derive_stream(cfg.seed, i): one draw picks the truth (also
/// consumed when the truth is fixed), the rest drive run_trial.
TrialRecord run_indexed_trial(const ProtocolObservables& observables,
                              const DiscriminationConfig& cfg, std::uint64_t index,
                              std::optional<Hypothesis> fixed_truth);

DiscriminationReport monte_carlo_error_rate(const DiscriminationConfig& cfg,
                                            std::uint64_t trials,
                                            const MonteCarloOptions& opts = {});

/// Same trials as monte_carlo_error_rate, keeping every record.
std::vector<TrialRecord> run_trials(const DiscriminationConfig& cfg, std::uint64_t trials,
                                    const MonteCarloOptions& opts = {});

DiscriminationReport summarize(const DiscriminationConfig& cfg, std::optional<Hypothesis> fixed_truth,
                               const DiscriminationTally& tally);

}  // namespace qsim
