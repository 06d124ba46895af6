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

#include "qsim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsim/errors.hpp"
#include "qsim/lueders.hpp"
#include "qsim/quadrature.hpp"

namespace qsim {
namespace {

constexpr double kQuadratureTol = 1e-10;
constexpr double kIndistinguishableGap = 1e-6;

void check_angle(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kHalfPi)) {
    throw AngleOutOfRange("angle " + std::to_string(alpha) + " is outside [0, pi/2]");
  }
}

double table_step() { return kHalfPi / static_cast<double>(NoiseModel::kTablePoints - 1); }

}  // namespace

AngleParametrizedObservable angle_parametrized(double alpha) {
  check_angle(alpha);
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  // In the {|1>, |0>} basis: |+> = (1, 1)/sqrt2, |-> = (1, -1)/sqrt2.
  Vector first(2);
  first << (c + s) * M_SQRT1_2, (c - s) * M_SQRT1_2;
  Vector second(2);
  second << (s - c) * M_SQRT1_2, (s + c) * M_SQRT1_2;
  return {alpha, make_pure_state(first).state, make_pure_state(second).state};
}

Observable perturbed_observable(double alpha, double gap) {
  if (!(gap > 0.0)) throw InvalidArgument("perturbed_observable: gap must be positive");
  const auto basis = angle_parametrized(alpha);
  return Observable::from_eigenspaces({{1.0, Matrix(basis.first.amplitudes())},
                                       {1.0 + gap, Matrix(basis.second.amplitudes())}});
}

double plus_probability_given_alpha(double alpha) {
  check_angle(alpha);
  const double c2 = std::cos(alpha) * std::cos(alpha);
  const double s2 = std::sin(alpha) * std::sin(alpha);
  return c2 * c2 + s2 * s2;
}

NoiseModel::NoiseModel(Kind kind, double q, double alpha_mean)
    : kind_(kind), q_(q), alpha_mean_(alpha_mean) {
  if (kind_ == Kind::uniform) {
    normalizer_ = kHalfPi;
    return;
  }
  const auto norm = simpson_until_stable([this](double a) { return shifted_weight(a); }, 0.0,
                                         kHalfPi, kQuadratureTol * 1e-2);
  normalizer_ = norm.value;

  // Trapezoid cumulative table, rescaled so the last entry is exactly 1.
  auto cdf = std::make_shared<std::vector<double>>(kTablePoints, 0.0);
  const double h = table_step();
  double previous = shifted_weight(0.0);
  for (std::size_t i = 1; i < kTablePoints; ++i) {
    const double current = shifted_weight(h * static_cast<double>(i));
    (*cdf)[i] = (*cdf)[i - 1] + 0.5 * h * (previous + current);
    previous = current;
  }
  const double total = cdf->back();
  for (double& c : *cdf) c /= total;
  cdf->back() = 1.0;
  cdf_ = std::move(cdf);
}

NoiseModel NoiseModel::uniform() { return NoiseModel(Kind::uniform, 0.0, kQuarterPi); }

NoiseModel NoiseModel::von_mises(double q, double alpha_mean) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw InvalidArgument("von Mises q must be >= 0");
  if (!(alpha_mean >= 0.0 && alpha_mean <= kHalfPi)) {
    throw InvalidArgument("von Mises alpha_mean must lie in [0, pi/2]");
  }
  return NoiseModel(Kind::von_mises, q, alpha_mean);
}

double NoiseModel::shifted_weight(double alpha) const {
  // Subtracting the maximum of q^2 cos(.) keeps exp() finite for large q.
  return std::exp(q_ * q_ * (std::cos(alpha - alpha_mean_) - 1.0));
}

double NoiseModel::density(double alpha) const {
  if (alpha < 0.0 || alpha > kHalfPi) return 0.0;
  if (kind_ == Kind::uniform) return 1.0 / kHalfPi;
  return shifted_weight(alpha) / normalizer_;
}

double NoiseModel::inverse_cdf(double u) const {
  if (kind_ == Kind::uniform) return std::clamp(u, 0.0, 1.0) * kHalfPi;
  const auto& cdf = *cdf_;
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return kHalfPi;
  // First entry strictly above u; cdf[i-1] <= u < cdf[i] so the slope is positive.
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  const auto i = static_cast<std::size_t>(it - cdf.begin());
  const double h = table_step();
  const double t = (u - cdf[i - 1]) / (cdf[i] - cdf[i - 1]);
  return std::min(kHalfPi, h * (static_cast<double>(i - 1) + t));
}

double NoiseModel::sample(RandomStream& rng) const { return inverse_cdf(rng.uniform()); }

double NoiseModel::table_cdf(double alpha) const {
  if (alpha <= 0.0) return 0.0;
  if (alpha >= kHalfPi) return 1.0;
  if (kind_ == Kind::uniform) return alpha / kHalfPi;
  const auto& cdf = *cdf_;
  const double pos = alpha / table_step();
  const auto i = std::min(static_cast<std::size_t>(pos), kTablePoints - 2);
  const double t = pos - static_cast<double>(i);
  return cdf[i] + t * (cdf[i + 1] - cdf[i]);
}

double sample_alpha(const NoiseModel& model, RandomStream& rng) { return model.sample(rng); }

double average_plus_probability(const NoiseModel& model) {
  auto f = [](double a) {
    const double c2 = std::cos(a) * std::cos(a);
    const double s2 = std::sin(a) * std::sin(a);
    return c2 * c2 + s2 * s2;
  };
  const auto weighted = simpson_until_stable(
      [&](double a) { return model.density(a) * f(a); }, 0.0, kHalfPi, kQuadratureTol);
  const auto mass = simpson_until_stable([&](double a) { return model.density(a); }, 0.0,
                                         kHalfPi, kQuadratureTol);
  if (!weighted.converged || !mass.converged) {
    throw Error("average_plus_probability: quadrature did not converge");
  }
  return weighted.value / mass.value;
}

namespace {

template <class ObservableFor>
PlusFraction chain_kernel(std::uint64_t samples, std::uint64_t seed, Execution exec,
                          ObservableFor&& observable_for) {
  const std::uint64_t chunks = (samples + kChainChunk - 1) / kChainChunk;
  const PureState input = ket_plus();
  return reduce_trials<PlusFraction>(chunks, exec, [&](std::uint64_t chunk, PlusFraction& t) {
    RandomStream rng = derive_stream(seed, chunk);
    const std::uint64_t begin = chunk * kChainChunk;
    const std::uint64_t end = std::min(samples, begin + kChainChunk);
    for (std::uint64_t s = begin; s < end; ++s) {
      const auto outcome = measure(input, observable_for(rng), rng);
      t.plus += interference_measure(std::get<PureState>(outcome.post_state), rng) ==
                Interference::plus;
      ++t.samples;
    }
  });
}

}  // namespace

PlusFraction simulate_chain(const Observable& obs, std::uint64_t samples, std::uint64_t seed,
                            Execution exec) {
  require_same_dim(obs.dim(), 2, "simulate_chain");
  if (samples < 1) throw InvalidArgument("simulate_chain: samples must be at least 1");
  return chain_kernel(samples, seed, exec, [&](RandomStream&) -> const Observable& { return obs; });
}

PlusFraction simulate_noisy_chain(const NoiseModel& model, std::uint64_t samples,
                                  std::uint64_t seed, Execution exec, double gap) {
  if (samples < 1) throw InvalidArgument("simulate_noisy_chain: samples must be at least 1");
  return chain_kernel(samples, seed, exec, [&](RandomStream& rng) {
    return perturbed_observable(model.sample(rng), gap);
  });
}

double HypothesisModel::plus_probability() const {
  return noise ? average_plus_probability(*noise) : chain_plus_probability(ideal);
}

NoisyTally& NoisyTally::operator+=(const NoisyTally& o) {
  trials += o.trials;
  errors += o.errors;
  truth_j += o.truth_j;
  plus_outcomes += o.plus_outcomes;
  return *this;
}

int hoeffding_copies(double p_i, double p_j, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  const double gap = p_i - p_j;
  if (std::abs(gap) < kIndistinguishableGap) {
    throw IndistinguishableHypotheses("hypotheses predict the same plus probability");
  }
  return static_cast<int>(std::ceil(2.0 * std::log(2.0 / epsilon) / (gap * gap)));
}

NoisyDiscriminationReport noisy_discrimination(const HypothesisModel& hyp_i,
                                               const HypothesisModel& hyp_j,
                                               const NoisyDiscriminationConfig& cfg,
                                               std::uint64_t trials, Execution exec) {
  if (cfg.m < 1) throw InvalidArgument("noisy_discrimination: m must be at least 1");
  if (trials < 1) throw InvalidArgument("noisy_discrimination: trials must be at least 1");
  if (!(cfg.prior_j > 0.0 && cfg.prior_j < 1.0)) {
    throw InvalidArgument("noisy_discrimination: prior_j must lie in (0, 1)");
  }
  require_same_dim(hyp_i.ideal.dim(), 2, "noisy_discrimination");
  require_same_dim(hyp_j.ideal.dim(), 2, "noisy_discrimination");

  NoisyDiscriminationReport report{};
  report.p_i = hyp_i.plus_probability();
  report.p_j = hyp_j.plus_probability();
  report.m_bound = hoeffding_copies(report.p_i, report.p_j, cfg.epsilon);
  report.threshold = 0.5 * (report.p_i + report.p_j);
  const bool i_above = report.p_i > report.p_j;
  const PureState input = ket_plus();

  report.tally = reduce_trials<NoisyTally>(trials, exec, [&](std::uint64_t t, NoisyTally& tally) {
    RandomStream rng = derive_stream(cfg.seed, t);
    const Hypothesis truth = rng.uniform() < cfg.prior_j ? Hypothesis::J : Hypothesis::I;
    const HypothesisModel& hyp = truth == Hypothesis::I ? hyp_i : hyp_j;
    std::optional<Observable> frozen;
    if (hyp.noise && cfg.frozen_noise) frozen = perturbed_observable(hyp.noise->sample(rng), cfg.gap);

    std::uint64_t plus = 0;
    for (int copy = 0; copy < cfg.m; ++copy) {
      std::optional<Observable> fresh;
      if (hyp.noise && !cfg.frozen_noise) fresh = perturbed_observable(hyp.noise->sample(rng), cfg.gap);
      const Observable& obs = frozen ? *frozen : fresh ? *fresh : hyp.ideal;
      const auto outcome = measure(input, obs, rng);
      plus += interference_measure(std::get<PureState>(outcome.post_state), rng) ==
              Interference::plus;
    }
    const double fraction = static_cast<double>(plus) / static_cast<double>(cfg.m);
    const bool says_i = i_above ? fraction > report.threshold : fraction < report.threshold;
    const Hypothesis decision = says_i ? Hypothesis::I : Hypothesis::J;
    ++tally.trials;
    tally.truth_j += truth == Hypothesis::J;
    tally.plus_outcomes += plus;
    tally.errors += decision != truth;
  });
  report.empirical_error =
      static_cast<double>(report.tally.errors) / static_cast<double>(report.tally.trials);
  report.ci = wilson_interval(report.tally.errors, report.tally.trials, 0.95);
  return report;
}

}  // namespace qsim
