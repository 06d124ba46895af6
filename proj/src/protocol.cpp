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

#include "qsim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsim/errors.hpp"
#include "qsim/lueders.hpp"

namespace qsim {

std::string_view to_string(Hypothesis h) { return h == Hypothesis::I ? "I" : "J"; }
char to_char(Interference o) { return o == Interference::plus ? '+' : '-'; }

Hypothesis decide_any_minus(std::span<const Interference> outcomes) {
  for (auto o : outcomes) {
    if (o == Interference::minus) return Hypothesis::J;
  }
  return Hypothesis::I;
}

void DiscriminationConfig::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidArgument("delta must be a positive finite number");
  }
  if (m < 1) throw InvalidArgument("m must be at least 1");
  if (!(prior_j > 0.0 && prior_j < 1.0)) throw InvalidArgument("prior_j must lie in (0, 1)");
  if (rule == nullptr) throw InvalidArgument("decision rule is null");
}

ProtocolObservables ProtocolObservables::make(double delta) {
  return {identity_observable(2), j_observable(delta)};
}

const Observable& interference_observable() {
  static const Observable obs = Observable::from_eigenspaces(
      {{-1.0, Matrix(ket_minus().amplitudes())}, {1.0, Matrix(ket_plus().amplitudes())}});
  return obs;
}

namespace {

Interference label_of(const std::vector<OutcomeProbability>& probs, double u) {
  const double weights[2] = {probs[0].probability, probs[1].probability};
  const long k = sample_index(weights, u);
  return interference_observable().eigenvalue(k) > 0.0 ? Interference::plus
                                                       : Interference::minus;
}

}  // namespace

Interference interference_measure(const PureState& state, RandomStream& rng) {
  require_same_dim(state.dim(), 2, "interference_measure");
  return label_of(outcome_probabilities(state, interference_observable()), rng.uniform());
}

Interference interference_measure(const DensityMatrix& rho, RandomStream& rng) {
  require_same_dim(rho.dim(), 2, "interference_measure");
  return label_of(outcome_probabilities(rho, interference_observable()), rng.uniform());
}

TrialRecord run_trial(const ProtocolObservables& observables, const DiscriminationConfig& cfg,
                      Hypothesis truth, RandomStream& rng) {
  const Observable& obs = observables[truth];
  const PureState input = ket_plus();
  TrialRecord record{truth, {}, {}, Hypothesis::I, false};
  record.first_eigenvalues.reserve(static_cast<std::size_t>(cfg.m));
  record.outcomes.reserve(static_cast<std::size_t>(cfg.m));
  for (int copy = 0; copy < cfg.m; ++copy) {
    const MeasurementOutcome first = measure(input, obs, rng);
    record.first_eigenvalues.push_back(first.eigenvalue);
    const auto outcome = interference_measure(std::get<PureState>(first.post_state), rng);
    record.outcomes.push_back(outcome);
    if (cfg.early_stop && outcome == Interference::minus) break;
  }
  record.decision = cfg.rule(record.outcomes);
  record.correct = record.decision == truth;
  return record;
}

TrialRecord run_trial(const DiscriminationConfig& cfg, Hypothesis truth, RandomStream& rng) {
  cfg.validate();
  return run_trial(ProtocolObservables::make(cfg.delta), cfg, truth, rng);
}

double analytic_error_probability(int m, double prior_j) {
  if (m < 1) throw InvalidArgument("analytic_error_probability: m must be at least 1");
  if (!(prior_j > 0.0 && prior_j <= 1.0)) {
    throw InvalidArgument("analytic_error_probability: prior_j must lie in (0, 1]");
  }
  return std::ldexp(prior_j, -m);
}

int required_copies(double epsilon, double prior_j) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("required_copies: epsilon must lie in (0, 1)");
  }
  int m = 1;
  while (analytic_error_probability(m, prior_j) > epsilon) ++m;
  return m;
}

double chain_plus_probability(const Observable& obs) {
  require_same_dim(obs.dim(), 2, "chain_plus_probability");
  const PureState input = ket_plus();
  const PureState plus = ket_plus();
  double total = 0.0;
  const auto probs = outcome_probabilities(input, obs);
  for (long k = 0; k < obs.group_count(); ++k) {
    const double p = probs[static_cast<std::size_t>(k)].probability;
    if (p < kZeroProbability) continue;
    total += p * fidelity(plus, lueders_collapse(input, obs, k));
  }
  // Rounding can leave total a few ulp outside [0, 1].
  return std::clamp(total, 0.0, 1.0);
}

EnumeratedError enumerate_error_probability(const DiscriminationConfig& cfg) {
  cfg.validate();
  if (cfg.m > 24) throw InvalidArgument("enumerate_error_probability: m must be <= 24");
  const auto observables = ProtocolObservables::make(cfg.delta);
  const double plus_i = chain_plus_probability(observables.identity);
  const double plus_j = chain_plus_probability(observables.j);

  EnumeratedError out{0.0, 0.0, 0.0};
  std::vector<Interference> outcomes(static_cast<std::size_t>(cfg.m));
  const std::uint64_t strings = std::uint64_t{1} << cfg.m;
  for (std::uint64_t bits = 0; bits < strings; ++bits) {
    double weight_i = 1.0;
    double weight_j = 1.0;
    for (int c = 0; c < cfg.m; ++c) {
      const bool minus = (bits >> c) & 1U;
      outcomes[static_cast<std::size_t>(c)] = minus ? Interference::minus : Interference::plus;
      weight_i *= minus ? 1.0 - plus_i : plus_i;
      weight_j *= minus ? 1.0 - plus_j : plus_j;
    }
    const Hypothesis decision = cfg.rule(outcomes);
    if (decision != Hypothesis::I) out.given_i += weight_i;
    if (decision != Hypothesis::J) out.given_j += weight_j;
  }
  out.total = (1.0 - cfg.prior_j) * out.given_i + cfg.prior_j * out.given_j;
  return out;
}

DiscriminationTally& DiscriminationTally::operator+=(const DiscriminationTally& o) {
  trials += o.trials;
  errors += o.errors;
  truth_j += o.truth_j;
  errors_given_j += o.errors_given_j;
  errors_given_i += o.errors_given_i;
  copies_used += o.copies_used;
  minus_outcomes += o.minus_outcomes;
  return *this;
}

void DiscriminationTally::add(const TrialRecord& record) {
  ++trials;
  copies_used += record.outcomes.size();
  for (auto o : record.outcomes) minus_outcomes += o == Interference::minus;
  const bool is_j = record.truth == Hypothesis::J;
  truth_j += is_j;
  if (!record.correct) {
    ++errors;
    (is_j ? errors_given_j : errors_given_i) += 1;
  }
}

TrialRecord run_indexed_trial(const ProtocolObservables& observables,
                              const DiscriminationConfig& cfg, std::uint64_t index,
                              std::optional<Hypothesis> fixed_truth) {
  RandomStream rng = derive_stream(cfg.seed, index);
  const double u = rng.uniform();
  const Hypothesis truth = fixed_truth.value_or(u < cfg.prior_j ? Hypothesis::J : Hypothesis::I);
  return run_trial(observables, cfg, truth, rng);
}

DiscriminationReport summarize(const DiscriminationConfig& cfg,
                               std::optional<Hypothesis> fixed_truth,
                               const DiscriminationTally& tally) {
  if (tally.trials == 0) throw InvalidArgument("summarize: no trials");
  DiscriminationReport r{cfg, fixed_truth, tally, 0.0, {}, 0.0, 0.0, 0.0};
  r.empirical_error = static_cast<double>(tally.errors) / static_cast<double>(tally.trials);
  r.ci = wilson_interval(tally.errors, tally.trials, 0.95);
  if (!fixed_truth) {
    r.analytic_error = analytic_error_probability(cfg.m, cfg.prior_j);
  } else {
    r.analytic_error = *fixed_truth == Hypothesis::J ? analytic_error_probability(cfg.m, 1.0) : 0.0;
  }
  r.stderr_analytic = binomial_stderr(r.analytic_error, tally.trials);
  r.sigmas = deviation_in_sigmas(r.empirical_error, r.analytic_error, r.stderr_analytic);
  return r;
}

DiscriminationReport monte_carlo_error_rate(const DiscriminationConfig& cfg,
                                            std::uint64_t trials,
                                            const MonteCarloOptions& opts) {
  cfg.validate();
  if (trials < 1) throw InvalidArgument("monte_carlo_error_rate: trials must be at least 1");
  const auto observables = ProtocolObservables::make(cfg.delta);
  const auto tally = reduce_trials<DiscriminationTally>(
      trials, opts.execution, [&](std::uint64_t i, DiscriminationTally& t) {
        t.add(run_indexed_trial(observables, cfg, i, opts.fixed_truth));
      });
  return summarize(cfg, opts.fixed_truth, tally);
}

std::vector<TrialRecord> run_trials(const DiscriminationConfig& cfg, std::uint64_t trials,
                                    const MonteCarloOptions& opts) {
  cfg.validate();
  const auto observables = ProtocolObservables::make(cfg.delta);
  std::vector<TrialRecord> records(trials);
  struct None {
    None& operator+=(const None&) { return *this; }
  };
  reduce_trials<None>(trials, opts.execution, [&](std::uint64_t i, None&) {
    records[i] = run_indexed_trial(observables, cfg, i, opts.fixed_truth);
  });
  return records;
}

}  // namespace qsim
