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

#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qsim/errors.hpp"
#include "qsim/observable.hpp"
#include "qsim/protocol.hpp"
#include "qsim/stats.hpp"

using namespace qsim;

namespace {

// Counts outcome strings directly: under J every string of m symbols is
// equally likely, under I only the all-plus string occurs.
struct CountedError {
  double given_i;
  double given_j;
};

CountedError count_error_strings(int m, DecisionRule rule) {
  std::uint64_t wrong_j = 0;
  std::vector<Interference> s(m);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    for (int c = 0; c < m; ++c) s[c] = (bits >> c) & 1 ? Interference::minus : Interference::plus;
    wrong_j += rule(s) == Hypothesis::I;
  }
  std::fill(s.begin(), s.end(), Interference::plus);
  return {rule(s) == Hypothesis::J ? 1.0 : 0.0,
          static_cast<double>(wrong_j) / static_cast<double>(std::uint64_t{1} << m)};
}

int scan_required_copies(double eps, double prior_j) {
  int m = 1;
  while (prior_j * std::pow(0.5, m) > eps) ++m;
  return m;
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("interference measurement examples") {
  RandomStream rng = derive_stream(31, 0);
  for (int i = 0; i < 1000; ++i) {
    CHECK(interference_measure(ket_plus(), rng) == Interference::plus);
    CHECK(interference_measure(ket_minus(), rng) == Interference::minus);
  }
  const DensityMatrix half = DensityMatrix::maximally_mixed(2);
  const std::uint64_t n = 200'000;
  std::uint64_t plus = 0;
  for (std::uint64_t i = 0; i < n; ++i) plus += interference_measure(half, rng) == Interference::plus;
  CHECK(std::abs(static_cast<double>(plus) / n - 0.5) <= 3.0 * binomial_stderr(0.5, n));

  const PureState three = make_pure_state(Vector::Ones(3)).state;
  CHECK_THROWS_AS(interference_measure(three, rng), DimensionMismatch);
}

TEST_CASE("identity is never mistaken for J") {
  DiscriminationConfig cfg;
  for (int m : {1, 4, 9}) {
    cfg.m = m;
    RandomStream rng = derive_stream(32, m);
    for (int i = 0; i < 200; ++i) {
      const TrialRecord r = run_trial(cfg, Hypothesis::I, rng);
      CHECK(r.outcomes.size() == static_cast<std::size_t>(m));
      for (Interference o : r.outcomes) CHECK(o == Interference::plus);
      CHECK(r.decision == Hypothesis::I);
      CHECK(r.correct);
    }
  }
}

TEST_CASE("single-copy and three-copy error rates under J") {
  const std::uint64_t n = 100'000;
  DiscriminationConfig cfg;
  cfg.seed = 33;
  cfg.m = 1;
  auto r1 = monte_carlo_error_rate(cfg, n, {Hypothesis::J, Execution::parallel});
  CHECK(std::abs(r1.empirical_error - 0.5) <= 3.0 * binomial_stderr(0.5, n));
  cfg.m = 3;
  auto r3 = monte_carlo_error_rate(cfg, n, {Hypothesis::J, Execution::parallel});
  CHECK(std::abs(r3.empirical_error - 0.125) <= 3.0 * binomial_stderr(0.125, n));
}

TEST_CASE("decision rule matches the record") {
  DiscriminationConfig cfg;
  cfg.m = 5;
  cfg.seed = 34;
  for (const TrialRecord& r : run_trials(cfg, 2000)) {
    bool any_minus = false;
    for (Interference o : r.outcomes) any_minus |= o == Interference::minus;
    CHECK((r.decision == Hypothesis::J) == any_minus);
    CHECK(r.correct == (r.decision == r.truth));
    CHECK(r.first_eigenvalues.size() == r.outcomes.size());
  }
}

TEST_CASE("analytic error examples and halving") {
  CHECK(analytic_error_probability(1, 0.5) == 0.25);
  CHECK(analytic_error_probability(3, 0.5) == 0.0625);
  CHECK(analytic_error_probability(4, 1.0) == 0.0625);
  for (int m = 1; m < 60; ++m) {
    CHECK(analytic_error_probability(m + 1) / analytic_error_probability(m) == 0.5);
  }
  CHECK_THROWS_AS(analytic_error_probability(0), InvalidArgument);
  CHECK_THROWS_AS(analytic_error_probability(2, 0.0), InvalidArgument);
}

TEST_CASE("required copies agrees with a direct scan") {
  CHECK(required_copies(0.25, 0.5) == 1);
  CHECK(required_copies(0.01, 0.5) == 6);
  CHECK(required_copies(0.5, 0.5) == 1);
  for (double eps : {0.3, 0.1, 0.05, 1e-3, 1e-6, 3e-9}) {
    for (double prior : {0.1, 0.5, 0.9}) {
      CAPTURE(eps);
      CHECK(required_copies(eps, prior) == scan_required_copies(eps, prior));
    }
  }
  CHECK_THROWS_AS(required_copies(0.0), InvalidArgument);
  CHECK_THROWS_AS(required_copies(1.0), InvalidArgument);
}

TEST_CASE("enumeration agrees with the string-counting oracle") {
  DiscriminationConfig cfg;
  for (int m = 1; m <= 10; ++m) {
    cfg.m = m;
    const EnumeratedError e = enumerate_error_probability(cfg);
    const CountedError c = count_error_strings(m, &decide_any_minus);
    CHECK(c.given_i == 0.0);
    CHECK(c.given_j == std::ldexp(1.0, -m));
    CHECK(e.given_i == 0.0);
    CHECK(std::abs(e.given_j - c.given_j) <= 1e-14 * c.given_j);
    CHECK(std::abs(e.total - analytic_error_probability(m)) <= 1e-14 * analytic_error_probability(m));
  }
}

TEST_CASE("config validation") {
  DiscriminationConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.delta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.m = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.prior_j = 1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  CHECK_THROWS_AS(monte_carlo_error_rate(DiscriminationConfig{}, 0), InvalidArgument);
}

TEST_CASE("delta only relabels eigenvalues") {
  DiscriminationConfig cfg;
  cfg.m = 4;
  cfg.seed = 35;
  std::vector<std::vector<TrialRecord>> runs;
  for (double delta : {1e-6, 0.1, 1.0}) {
    cfg.delta = delta;
    runs.push_back(run_trials(cfg, 3000));
  }
  for (std::size_t i = 0; i < runs[0].size(); ++i) {
    for (std::size_t r = 1; r < runs.size(); ++r) {
      CHECK(runs[r][i].truth == runs[0][i].truth);
      CHECK(runs[r][i].outcomes == runs[0][i].outcomes);
      CHECK(runs[r][i].decision == runs[0][i].decision);
    }
  }
  DiscriminationTally t0, t2;
  for (const auto& r : runs[0]) t0.add(r);
  for (const auto& r : runs[2]) t2.add(r);
  CHECK(t0 == t2);
}

TEST_CASE("early stop changes copies used but not decisions") {
  DiscriminationConfig cfg;
  cfg.m = 6;
  cfg.seed = 36;
  const auto full = run_trials(cfg, 5000);
  cfg.early_stop = true;
  const auto early = run_trials(cfg, 5000);
  std::uint64_t used_full = 0, used_early = 0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(early[i].decision == full[i].decision);
    CHECK(early[i].truth == full[i].truth);
    used_full += full[i].outcomes.size();
    used_early += early[i].outcomes.size();
  }
  CHECK(used_early < used_full);
}

TEST_CASE("Monte Carlo error rate within three sigma for m = 2 and m = 6") {
  DiscriminationConfig cfg;
  cfg.seed = 37;
  cfg.m = 2;
  const auto r2 = monte_carlo_error_rate(cfg, 100'000);
  CHECK(r2.analytic_error == 0.125);
  CHECK(r2.sigmas <= 3.0);
  CHECK(r2.ci.low <= r2.empirical_error);
  CHECK(r2.empirical_error <= r2.ci.high);

  cfg.m = 6;
  const auto r6 = monte_carlo_error_rate(cfg, 1'000'000);
  CHECK(r6.analytic_error == std::ldexp(1.0, -7));
  CHECK(r6.sigmas <= 3.0);
}

TEST_CASE("fixed truth I gives exactly zero errors") {
  DiscriminationConfig cfg;
  cfg.seed = 38;
  const auto r = monte_carlo_error_rate(cfg, 1000, {Hypothesis::I, Execution::parallel});
  CHECK(r.tally.errors == 0);
  CHECK(r.empirical_error == 0.0);
  CHECK(r.ci.low == 0.0);
}

TEST_CASE("parallel and serial tallies are identical") {
#ifdef _OPENMP
  omp_set_num_threads(4);
#endif
  DiscriminationConfig cfg;
  for (int m : {1, 3, 6}) {
    cfg.m = m;
    cfg.seed = 39 + m;
    const auto par = monte_carlo_error_rate(cfg, 20'011, {std::nullopt, Execution::parallel});
    const auto ser = monte_carlo_error_rate(cfg, 20'011, {std::nullopt, Execution::serial});
    CHECK(par.tally == ser.tally);
    CHECK(par.empirical_error == ser.empirical_error);
  }
}

TEST_CASE("tally merge is order independent") {
  DiscriminationConfig cfg;
  cfg.m = 3;
  cfg.seed = 40;
  const auto records = run_trials(cfg, 999);
  DiscriminationTally whole, a, b;
  for (std::size_t i = 0; i < records.size(); ++i) {
    whole.add(records[i]);
    (i % 2 ? a : b).add(records[i]);
  }
  DiscriminationTally ab = a, ba = b;
  ab += b;
  ba += a;
  CHECK(ab == whole);
  CHECK(ba == whole);
}

}  // TEST_SUITE
