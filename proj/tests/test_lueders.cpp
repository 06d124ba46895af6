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

#include "qsim/ensembles.hpp"
#include "qsim/errors.hpp"
#include "qsim/lueders.hpp"
#include "qsim/observable.hpp"
#include "qsim/rng.hpp"
#include "qsim/state.hpp"
#include "qsim/stats.hpp"
#include "test_helpers.hpp"

using namespace qsim;
using qsim::testing::mat2;
using qsim::testing::ray_distance;

namespace {

// Born probability of group k computed from eigenvectors directly.
double born_oracle(const PureState& phi, const Observable& obs, long k) {
  double p = 0.0;
  const Matrix& b = obs.eigenbasis(k);
  for (long j = 0; j < b.cols(); ++j) p += std::norm(b.col(j).dot(phi.amplitudes()));
  return p;
}

Matrix basis_one_zero() { return Matrix::Identity(2, 2); }

Matrix basis_plus_minus() {
  Matrix b(2, 2);
  b.col(0) = ket_plus().amplitudes();
  b.col(1) = ket_minus().amplitudes();
  return b;
}

}  // namespace

TEST_SUITE("lueders") {

TEST_CASE("outcome probabilities for the protocol states") {
  const Observable j = j_observable(0.1);
  const Observable id = identity_observable();

  auto pj = outcome_probabilities(ket_plus(), j);
  REQUIRE(pj.size() == 2);
  CHECK(pj[0].eigenvalue == doctest::Approx(1.0));
  CHECK(pj[1].eigenvalue == doctest::Approx(1.1));
  CHECK(pj[0].probability == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pj[1].probability == doctest::Approx(0.5).epsilon(1e-14));

  auto p1 = outcome_probabilities(ket_one(), j);
  CHECK(p1[0].probability == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p1[1].probability == 0.0);

  auto pi = outcome_probabilities(ket_plus(), id);
  REQUIRE(pi.size() == 1);
  CHECK(pi[0].eigenvalue == 1.0);
  CHECK(pi[0].probability == doctest::Approx(1.0).epsilon(1e-14));

  const PureState three = make_pure_state(Vector::Ones(3)).state;
  CHECK_THROWS_AS(outcome_probabilities(three, j), DimensionMismatch);
}

TEST_CASE("Lueders collapse examples") {
  const Observable j = j_observable(0.1);
  const Observable id = identity_observable();
  CHECK(fidelity(lueders_collapse(ket_plus(), id, 0), ket_plus()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity(lueders_collapse(ket_plus(), j, 0), ket_one()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(lueders_collapse(ket_one(), j, 1), ZeroProbabilityOutcome);
  CHECK_THROWS_AS(lueders_collapse(ket_one(), j, 2), InvalidArgument);
}

TEST_CASE("mixed-state collapse examples") {
  const Observable j = j_observable(0.1);
  const Observable id = identity_observable();
  const DensityMatrix half = DensityMatrix::maximally_mixed(2);

  CHECK(max_abs_diff(lueders_collapse_mixed(half, id, 0).matrix(), half.matrix()) <= 1e-14);
  CHECK(max_abs_diff(lueders_collapse_mixed(DensityMatrix::from_pure(ket_plus()), j, 0).matrix(),
                     ket_one().projector()) <= 1e-14);
  CHECK(max_abs_diff(lueders_collapse_mixed(half, j, 1).matrix(), ket_zero().projector()) <= 1e-14);
  CHECK_THROWS_AS(lueders_collapse_mixed(DensityMatrix::from_pure(ket_one()), j, 1),
                  ZeroProbabilityOutcome);
}

TEST_CASE("measure on eigenstates and degenerate observables is deterministic") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomStream rng = derive_stream(seed, 0);
    const MeasurementOutcome a = measure(ket_plus(), identity_observable(), rng);
    CHECK(a.group_index == 0);
    CHECK(a.probability == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(std::get<PureState>(a.post_state), ket_plus()) == doctest::Approx(1.0).epsilon(1e-14));

    const MeasurementOutcome b = measure(ket_one(), j_observable(0.1), rng);
    CHECK(b.eigenvalue == 1.0);
    CHECK(fidelity(std::get<PureState>(b.post_state), ket_one()) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("measure frequency on |+> with J is one half") {
  const Observable j = j_observable(0.1);
  RandomStream rng = derive_stream(21, 0);
  const std::uint64_t n = 1'000'000;
  std::uint64_t low = 0;
  for (std::uint64_t i = 0; i < n; ++i) low += measure(ket_plus(), j, rng).group_index == 0;
  const double freq = static_cast<double>(low) / n;
  CHECK(std::abs(freq - 0.5) <= 3.0 * binomial_stderr(0.5, n));
}

TEST_CASE("measure rejects mismatched dimensions") {
  RandomStream rng(1);
  const PureState three = make_pure_state(Vector::Ones(3)).state;
  CHECK_THROWS_AS(measure(three, j_observable(0.1), rng), DimensionMismatch);
  CHECK_THROWS_AS(measure(DensityMatrix::maximally_mixed(3), j_observable(0.1), rng), DimensionMismatch);
}

TEST_CASE("sample_index inverts the cumulative weights") {
  const std::vector<double> w{0.25, 0.0, 0.75};
  CHECK(sample_index(w, 0.0) == 0);
  CHECK(sample_index(w, 0.2499) == 0);
  CHECK(sample_index(w, 0.25) == 2);
  CHECK(sample_index(w, 0.9999999) == 2);
  const std::vector<double> tail{1.0, 0.0};
  CHECK(sample_index(tail, 0.9999999999) == 0);  // never lands on a zero weight
  CHECK_THROWS_AS(sample_index(std::vector<double>{}, 0.5), InvalidArgument);
  CHECK_THROWS_AS(sample_index(std::vector<double>{0.0, 0.0}, 0.5), InvalidArgument);
}

TEST_CASE("von Neumann unread channel examples") {
  const DensityMatrix a = von_neumann_measure_unread(ket_plus(), basis_one_zero());
  CHECK(max_abs_diff(a.matrix(), mat2(0.5, 0.0, 0.0, 0.5)) <= 1e-14);
  const DensityMatrix b = von_neumann_measure_unread(ket_one(), basis_one_zero());
  CHECK(max_abs_diff(b.matrix(), ket_one().projector()) <= 1e-14);
  const DensityMatrix c = von_neumann_measure_unread(ket_plus(), basis_plus_minus());
  CHECK(max_abs_diff(c.matrix(), ket_plus().projector()) <= 1e-14);

  CHECK_THROWS_AS(von_neumann_measure_unread(ket_plus(), mat2(1.0, 0.6, 0.0, 0.8)), BasisNotOrthonormal);
  CHECK_THROWS_AS(von_neumann_measure_unread(ket_plus(), Matrix(Vector::Unit(2, 0))), BasisNotOrthonormal);
}

TEST_CASE("Lueders and von Neumann differ in purity on a degenerate observable") {
  const PureState post = lueders_collapse(ket_plus(), identity_observable(), 0);
  CHECK(std::abs(DensityMatrix::from_pure(post).purity() - 1.0) <= 1e-12);
  CHECK(std::abs(von_neumann_measure_unread(ket_plus(), basis_one_zero()).purity() - 0.5) <= 1e-12);
}

TEST_CASE("probabilities match the eigenvector oracle and sum to one") {
  RandomStream rng = derive_stream(22, 0);
  for (int i = 0; i < 200; ++i) {
    const long dim = 1 + i % 8;
    const Observable obs = spectral_decompose(random_hermitian(dim, rng, i % 2 == 0));
    const PureState phi = random_state(dim, rng);
    const auto probs = outcome_probabilities(phi, obs);
    double total = 0.0;
    for (long k = 0; k < obs.group_count(); ++k) {
      CHECK(std::abs(probs[k].probability - born_oracle(phi, obs, k)) <= 1e-12);
      total += probs[k].probability;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);

    const auto mixed = outcome_probabilities(DensityMatrix::from_pure(phi), obs);
    for (long k = 0; k < obs.group_count(); ++k) {
      CHECK(std::abs(mixed[k].probability - probs[k].probability) <= 1e-12);
    }
  }
}

TEST_CASE("measuring twice repeats the outcome and the post-state") {
  RandomStream rng = derive_stream(23, 0);
  for (int i = 0; i < 300; ++i) {
    const long dim = 2 + i % 7;
    const Observable obs = spectral_decompose(random_hermitian(dim, rng, true));
    const PureState phi = random_state(dim, rng);
    const MeasurementOutcome first = measure(phi, obs, rng);
    const PureState& post = std::get<PureState>(first.post_state);
    const MeasurementOutcome second = measure(post, obs, rng);
    CHECK(second.group_index == first.group_index);
    CHECK(second.probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ray_distance(std::get<PureState>(second.post_state).amplitudes(), post.amplitudes()) <= 1e-12);
  }
}

TEST_CASE("identity collapse leaves every state unchanged") {
  RandomStream rng = derive_stream(24, 0);
  for (long dim = 1; dim <= 8; ++dim) {
    const Observable id = Observable::from_eigenspaces({{1.0, Matrix::Identity(dim, dim)}});
    for (int i = 0; i < 20; ++i) {
      const PureState phi = random_state(dim, rng);
      CHECK(std::abs(fidelity(lueders_collapse(phi, id, 0), phi) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("the Lueders post-state is the closest point of the eigenspace") {
  RandomStream rng = derive_stream(25, 0);
  const std::vector<double> spectrum{0.0, 0.0, 0.0, 1.0, 3.0, 3.0};
  const Observable obs = spectral_decompose(random_hermitian_with_spectrum(spectrum, rng));
  REQUIRE(obs.group_count() == 3);
  for (int trial = 0; trial < 5; ++trial) {
    const PureState phi = random_state(6, rng);
    for (long k : {0L, 2L}) {
      const double prob = outcome_probabilities(phi, obs)[k].probability;
      const PureState post = lueders_collapse(phi, obs, k);
      const double best = fidelity(phi, post);
      CHECK(std::abs(best - prob) <= 1e-12);  // |<phi|P phi>|^2 / Prob = Prob
      for (int i = 0; i < 1000; ++i) {
        const PureState b(random_unit_in_span(obs.eigenbasis(k), rng));
        CHECK(fidelity(phi, b) <= best + 1e-12);
      }
    }
  }
}

TEST_CASE("mixed channel keeps density-matrix invariants") {
  RandomStream rng = derive_stream(26, 0);
  for (int i = 0; i < 100; ++i) {
    const long dim = 2 + i % 7;
    const Observable obs = spectral_decompose(random_hermitian(dim, rng, true));
    // Random mixture of three pure states.
    Matrix rho = Matrix::Zero(dim, dim);
    double wsum = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double w = rng.uniform() + 0.1;
      rho += w * random_state(dim, rng).projector();
      wsum += w;
    }
    const DensityMatrix mixed(rho / wsum);
    const auto probs = outcome_probabilities(mixed, obs);
    for (long k = 0; k < obs.group_count(); ++k) {
      if (probs[k].probability < 1e-10) continue;
      const DensityMatrix post = lueders_collapse_mixed(mixed, obs, k);
      CHECK(std::abs(post.matrix().trace().real() - 1.0) <= 1e-12);
      CHECK(max_abs_diff(post.matrix(), post.matrix().adjoint()) <= 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> es(post.matrix());
      CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    }
    const DensityMatrix unread = lueders_unread(mixed, obs);
    CHECK(std::abs(unread.matrix().trace().real() - 1.0) <= 1e-12);
    CHECK(unread.purity() <= mixed.purity() + 1e-12);
  }
}

TEST_CASE("measurement outcome serializes with its post-state") {
  RandomStream rng(3);
  const MeasurementOutcome out = measure(ket_plus(), j_observable(0.1), rng);
  const nlohmann::json doc = to_json(out);
  CHECK(doc["k"] == out.group_index);
  CHECK(doc["eigenvalue"].get<double>() == out.eigenvalue);
  CHECK(doc["probability"].get<double>() == doctest::Approx(0.5));
  CHECK(doc["post_state"]["dim"] == 2);
}

}  // TEST_SUITE
