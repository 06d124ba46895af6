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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qsim/errors.hpp"
#include "qsim/lueders.hpp"
#include "qsim/noise.hpp"
#include "qsim/observable.hpp"
#include "qsim/protocol.hpp"
#include "qsim/stats.hpp"
#include "test_helpers.hpp"

using namespace qsim;
using qsim::testing::ray_distance;

namespace {

// Reference CDF of the truncated von Mises law, built by a fine cumulative
// trapezoid rule independent of the library's table and Simpson code.
class DensityOracle {
 public:
  DensityOracle(double q, double mean, std::size_t points = 1 << 17) : step_(kHalfPi / (points - 1)) {
    auto w = [&](double a) { return std::exp(q * q * (std::cos(a - mean) - 1.0)); };
    cdf_.resize(points);
    weights_.resize(points);
    for (std::size_t i = 0; i < points; ++i) weights_[i] = w(i * step_);
    for (std::size_t i = 1; i < points; ++i) {
      cdf_[i] = cdf_[i - 1] + 0.5 * step_ * (weights_[i - 1] + weights_[i]);
    }
    mass_ = cdf_.back();
    for (double& c : cdf_) c /= mass_;
  }

  double cdf(double a) const {
    const double x = std::clamp(a / step_, 0.0, static_cast<double>(cdf_.size() - 1));
    const auto i = std::min(static_cast<std::size_t>(x), cdf_.size() - 2);
    return cdf_[i] + (x - i) * (cdf_[i + 1] - cdf_[i]);
  }

  double quantile(double u) const {
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - cdf_.begin()));
    const double frac = (u - cdf_[i - 1]) / (cdf_[i] - cdf_[i - 1]);
    return (i - 1 + frac) * step_;
  }

  // E[g(alpha)] by the same trapezoid rule.
  template <class G>
  double expect(G g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      const double end = (i == 0 || i + 1 == weights_.size()) ? 0.5 : 1.0;
      s += end * weights_[i] * g(i * step_);
    }
    return s * step_ / mass_;
  }

 private:
  double step_;
  double mass_ = 0.0;
  std::vector<double> weights_;
  std::vector<double> cdf_;
};

double symbolic_plus(double a) { return std::pow(std::cos(a), 4) + std::pow(std::sin(a), 4); }

std::vector<double> draw(const NoiseModel& model, std::size_t n, std::uint64_t seed) {
  RandomStream rng = derive_stream(seed, 0);
  std::vector<double> xs(n);
  for (double& x : xs) x = sample_alpha(model, rng);
  return xs;
}

double ks_distance(std::vector<double> xs, const DensityOracle& oracle) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = oracle.cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

}  // namespace

TEST_SUITE("noise") {

TEST_CASE("angle parametrization examples") {
  const auto a0 = angle_parametrized(0.0);
  CHECK(ray_distance(a0.first.amplitudes(), ket_plus().amplitudes()) <= 1e-15);
  CHECK(ray_distance(a0.second.amplitudes(), ket_minus().amplitudes()) <= 1e-15);
  CHECK(std::abs(a0.second.amplitudes()(0) + ket_minus().amplitudes()(0)) <= 1e-15);  // -|->

  const auto aq = angle_parametrized(kQuarterPi);
  CHECK(std::abs(fidelity(aq.first, ket_one()) - 1.0) <= 1e-15);

  RandomStream rng = derive_stream(51, 0);
  for (int i = 0; i < 500; ++i) {
    const auto a = angle_parametrized(kHalfPi * rng.uniform());
    CHECK(std::abs(a.first.inner(a.second)) <= 1e-12);
    CHECK(std::abs(a.first.amplitudes().norm() - 1.0) <= 1e-12);
  }

  CHECK_THROWS_AS(angle_parametrized(-1e-3), AngleOutOfRange);
  CHECK_THROWS_AS(perturbed_observable(kHalfPi + 1e-3), AngleOutOfRange);
  CHECK_THROWS_AS(plus_probability_given_alpha(2.0), AngleOutOfRange);
}

TEST_CASE("perturbed observable has the parametrized eigenvectors") {
  const Observable obs = perturbed_observable(0.3);
  const auto a = angle_parametrized(0.3);
  REQUIRE(obs.group_count() == 2);
  CHECK(max_abs_diff(obs.projector(0), a.first.projector()) <= 1e-12);
  CHECK(max_abs_diff(obs.projector(1), a.second.projector()) <= 1e-12);
  CHECK(obs.eigenvalue(1) - obs.eigenvalue(0) == doctest::Approx(kDefaultNoiseGap).epsilon(1e-6));
}

TEST_CASE("plus probability examples and symmetry") {
  CHECK(plus_probability_given_alpha(0.0) == 1.0);
  CHECK(plus_probability_given_alpha(kQuarterPi) == doctest::Approx(0.5).epsilon(1e-15));
  const double c = std::cos(std::numbers::pi / 8), s = std::sin(std::numbers::pi / 8);
  CHECK(plus_probability_given_alpha(std::numbers::pi / 8) ==
        doctest::Approx(c * c * c * c + s * s * s * s).epsilon(1e-15));
  // cos^4 + sin^4 = 1 - sin^2(2a)/2, so pi/8 gives exactly 3/4.
  CHECK(plus_probability_given_alpha(std::numbers::pi / 8) == doctest::Approx(0.75).epsilon(1e-15));

  RandomStream rng = derive_stream(52, 0);
  for (int i = 0; i < 1000; ++i) {
    const double a = kHalfPi * rng.uniform();
    CHECK(std::abs(plus_probability_given_alpha(a) - plus_probability_given_alpha(kHalfPi - a)) <= 1e-15);
    CHECK(std::abs(plus_probability_given_alpha(a) - symbolic_plus(a)) <= 1e-12);
  }
}

TEST_CASE("plus probability equals the Born chain through the projectors") {
  RandomStream rng = derive_stream(53, 0);
  for (int i = 0; i < 200; ++i) {
    const double a = kHalfPi * rng.uniform();
    const Observable obs = perturbed_observable(a);
    // Sum over first outcomes k of P(k) * P(plus | post-state k).
    double p = 0.0;
    for (long k = 0; k < 2; ++k) {
      const double pk = outcome_probabilities(ket_plus(), obs)[k].probability;
      if (pk < 1e-14) continue;
      p += pk * fidelity(lueders_collapse(ket_plus(), obs, k), ket_plus());
    }
    CHECK(std::abs(p - plus_probability_given_alpha(a)) <= 1e-12);
  }
}

TEST_CASE("simulated chain at pi/8 matches within three sigma") {
  const std::uint64_t n = 1'000'000;
  const double a = std::numbers::pi / 8;
  const PlusFraction f = simulate_chain(perturbed_observable(a), n, 54);
  CHECK(f.samples == n);
  const double p = plus_probability_given_alpha(a);
  CHECK(std::abs(f.fraction() - p) <= 3.0 * binomial_stderr(p, n));
}

TEST_CASE("uniform sampler") {
  const std::size_t n = 1'000'000;
  const auto xs = draw(NoiseModel::uniform(), n, 55);
  double mean = 0.0;
  for (double x : xs) {
    CHECK_FALSE((x < 0.0 || x > kHalfPi));
    mean += x;
  }
  mean /= n;
  const double sigma = kHalfPi / std::sqrt(12.0 * n);
  CHECK(std::abs(mean - kQuarterPi) <= 3.0 * sigma);
}

TEST_CASE("von Mises q = 0 is indistinguishable from uniform") {
  const std::size_t n = 100'000;
  const DensityOracle uniform_oracle(0.0, kQuarterPi);
  const auto xs = draw(NoiseModel::von_mises(0.0), n, 56);
  CHECK(ks_distance(xs, uniform_oracle) < ks_critical_1pct(n));
}

TEST_CASE("von Mises q = 20 moments against a quadrature oracle") {
  const std::size_t n = 1'000'000;
  const DensityOracle oracle(20.0, kQuarterPi);
  const double mu = oracle.expect([](double a) { return a; });
  const double var = oracle.expect([&](double a) { return (a - mu) * (a - mu); });
  CHECK(std::abs(mu - kQuarterPi) <= 1e-12);

  const auto xs = draw(NoiseModel::von_mises(20.0), n, 57);
  double mean = 0.0, sq = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  for (double x : xs) sq += (x - mean) * (x - mean);
  const double sd = std::sqrt(sq / (n - 1));
  CHECK(std::abs(mean - mu) <= 3.0 * std::sqrt(var / n));
  CHECK(sd < 0.08);
  CHECK(sd == doctest::Approx(std::sqrt(var)).epsilon(0.01));
}

TEST_CASE("von Mises sampler passes a chi-square test") {
  constexpr int kBins = 50;
  const std::size_t n = 100'000;
  const double critical = boost::math::quantile(boost::math::chi_squared(kBins - 1), 0.99);
  for (double q : {0.0, 2.0, 5.0}) {
    CAPTURE(q);
    const DensityOracle oracle(q, kQuarterPi);
    std::vector<double> edges(kBins + 1);
    for (int b = 0; b <= kBins; ++b) edges[b] = oracle.quantile(static_cast<double>(b) / kBins);
    edges.back() = kHalfPi;
    std::vector<double> counts(kBins, 0.0);
    for (double x : draw(NoiseModel::von_mises(q), n, 58 + static_cast<std::uint64_t>(q))) {
      const auto it = std::upper_bound(edges.begin() + 1, edges.end() - 1, x);
      counts[it - edges.begin() - 1] += 1.0;
    }
    const double expected = static_cast<double>(n) / kBins;
    double chi2 = 0.0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < critical);
  }
}

TEST_CASE("inverse-CDF table tracks the oracle CDF") {
  for (double q : {0.0, 0.5, 2.0, 5.0, 20.0}) {
    for (double mean : {0.0, 0.4, kQuarterPi, kHalfPi}) {
      CAPTURE(q);
      CAPTURE(mean);
      const NoiseModel model = NoiseModel::von_mises(q, mean);
      const DensityOracle oracle(q, mean);
      double d = 0.0;
      for (int i = 0; i <= 20000; ++i) {
        const double a = kHalfPi * i / 20000.0;
        d = std::max(d, std::abs(model.table_cdf(a) - oracle.cdf(a)));
      }
      CHECK(d < 1e-3);
      CHECK(model.table_cdf(0.0) == 0.0);
      CHECK(model.table_cdf(kHalfPi) == 1.0);
    }
  }
}

TEST_CASE("density integrates to one") {
  for (double q : {0.0, 1.0, 5.0, 20.0}) {
    const NoiseModel model = NoiseModel::von_mises(q);
    const DensityOracle oracle(q, kQuarterPi);
    // Oracle expectation of density / density = 1; compare the density itself pointwise.
    const double mass = oracle.expect([](double) { return 1.0; });
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    double integral = 0.0;
    const int n = 1 << 16;
    for (int i = 0; i < n; ++i) integral += model.density((i + 0.5) * kHalfPi / n) * kHalfPi / n;
    CHECK(std::abs(integral - 1.0) <= 1e-8);
  }
  CHECK_THROWS_AS(NoiseModel::von_mises(-1.0), InvalidArgument);
  CHECK_THROWS_AS(NoiseModel::von_mises(1.0, 2.0), InvalidArgument);
}

TEST_CASE("average plus probability: uniform, limits and monotonicity") {
  CHECK(std::abs(average_plus_probability(NoiseModel::uniform()) - 0.75) <= 1e-9);
  CHECK(std::abs(average_plus_probability(NoiseModel::von_mises(0.0)) - 0.75) <= 1e-9);
  const double p20 = average_plus_probability(NoiseModel::von_mises(20.0));
  CHECK(p20 > 0.5);
  CHECK(p20 < 0.51);

  double prev = 0.75 + 1e-9;
  for (int i = 0; i <= 40; ++i) {
    const double q = 0.5 * i;
    const double p = average_plus_probability(NoiseModel::von_mises(q));
    const DensityOracle oracle(q, kQuarterPi);
    CAPTURE(q);
    CHECK(std::abs(p - oracle.expect(symbolic_plus)) <= 1e-8);
    CHECK(p <= prev + 1e-12);
    CHECK(p >= 0.5);
    prev = p;
  }
}

TEST_CASE("noisy chain Monte Carlo agrees with quadrature") {
  const std::uint64_t n = 2'000'000;
  for (const NoiseModel& model : {NoiseModel::uniform(), NoiseModel::von_mises(20.0)}) {
    const double p = average_plus_probability(model);
    const PlusFraction f = simulate_noisy_chain(model, n, 59);
    CHECK(std::abs(f.fraction() - p) <= 3.0 * binomial_stderr(p, n));
  }
}

TEST_CASE("chain kernels give identical counts serially and in parallel") {
#ifdef _OPENMP
  omp_set_num_threads(4);
#endif
  const NoiseModel model = NoiseModel::von_mises(2.0);
  CHECK(simulate_noisy_chain(model, 100'003, 60, Execution::parallel) ==
        simulate_noisy_chain(model, 100'003, 60, Execution::serial));
  const Observable obs = perturbed_observable(0.2);
  CHECK(simulate_chain(obs, 50'001, 61, Execution::parallel) ==
        simulate_chain(obs, 50'001, 61, Execution::serial));
}

TEST_CASE("Hoeffding copy count") {
  CHECK(hoeffding_copies(0.75, 0.5, 0.05) == 119);
  CHECK(hoeffding_copies(0.5, 0.75, 0.05) == 119);
  CHECK_THROWS_AS(hoeffding_copies(0.5, 0.5 + 1e-7, 0.05), IndistinguishableHypotheses);
  CHECK_THROWS_AS(hoeffding_copies(0.75, 0.5, 0.0), InvalidArgument);
}

TEST_CASE("noisy discrimination with uniform noise on I") {
  const HypothesisModel hyp_i{identity_observable(), NoiseModel::uniform()};
  const HypothesisModel hyp_j{j_observable(0.1), std::nullopt};
  NoisyDiscriminationConfig cfg;
  cfg.seed = 62;

  SUBCASE("at the Hoeffding copy count the error stays below epsilon") {
    cfg.m = 119;
    const auto r = noisy_discrimination(hyp_i, hyp_j, cfg, 10'000);
    CHECK(r.m_bound == 119);
    CHECK(r.p_i == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(r.p_j == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.threshold == doctest::Approx(0.625).epsilon(1e-9));
    CHECK(r.empirical_error <= 0.05);
  }
  SUBCASE("a single copy errs between one quarter and one half") {
    // Four combinations: I shows minus w.p. 1/4 (declares J); J shows plus w.p. 1/2 (declares I).
    const double exact = 0.5 * 0.25 + 0.5 * 0.5;
    cfg.m = 1;
    const std::uint64_t n = 100'000;
    const auto r = noisy_discrimination(hyp_i, hyp_j, cfg, n);
    CHECK(r.empirical_error > 0.25);
    CHECK(r.empirical_error < 0.5);
    CHECK(std::abs(r.empirical_error - exact) <= 3.0 * binomial_stderr(exact, n));
  }
  SUBCASE("frozen noise runs and stays deterministic") {
    cfg.m = 20;
    cfg.frozen_noise = true;
    const auto a = noisy_discrimination(hyp_i, hyp_j, cfg, 2000, Execution::parallel);
    const auto b = noisy_discrimination(hyp_i, hyp_j, cfg, 2000, Execution::serial);
    CHECK(a.tally == b.tally);
  }
}

TEST_CASE("strong von Mises noise on I is near chance") {
  const HypothesisModel hyp_i{identity_observable(), NoiseModel::von_mises(20.0)};
  const HypothesisModel hyp_j{j_observable(0.1), std::nullopt};
  NoisyDiscriminationConfig cfg;
  cfg.seed = 63;
  cfg.m = 5;
  try {
    const auto r = noisy_discrimination(hyp_i, hyp_j, cfg, 20'000);
    CHECK(r.empirical_error > 0.4);
    CHECK(r.m_bound > 10'000);
  } catch (const IndistinguishableHypotheses&) {
    CHECK(true);
  }
}

}  // TEST_SUITE
