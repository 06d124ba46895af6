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

#include "qsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "qsim/ensembles.hpp"
#include "qsim/errors.hpp"
#include "qsim/lueders.hpp"
#include "qsim/noise.hpp"
#include "qsim/observable.hpp"
#include "qsim/protocol.hpp"
#include "qsim/report.hpp"

namespace qsim {
namespace {

// Stream index blocks, one per check family.
constexpr std::uint64_t kAlgebraStreams = 1000;
constexpr std::uint64_t kBasisStreams = 2000;
constexpr std::uint64_t kProtocolStreams = 3000;
constexpr std::uint64_t kAngleStreams = 5000;
constexpr std::uint64_t kUniformStreams = 6000;
constexpr std::uint64_t kEquivalenceStreams = 9000;

// Declares J only when every copy shows minus. Used for fault injection.
Hypothesis decide_all_minus(std::span<const Interference> outcomes) {
  for (auto o : outcomes) {
    if (o == Interference::plus) return Hypothesis::I;
  }
  return Hypothesis::J;
}

CheckRow make_row(std::string id, std::string claim, double value, double reference,
                  double tolerance, bool passed, std::string detail = {}) {
  return {std::move(id), std::move(claim), passed, value, reference, tolerance, std::move(detail)};
}

CheckRow within(std::string id, std::string claim, double value, double reference,
                double tolerance, std::string detail = {}) {
  const bool ok = std::abs(value - reference) <= tolerance;
  return make_row(std::move(id), std::move(claim), value, reference, tolerance, ok,
                  std::move(detail));
}

struct AlgebraDefects {
  double algebra = 0.0;         // idempotent, Hermitian, orthogonal, complete
  double reconstruction = 0.0;  // |sum lambda_k P_k - H|
  double rank = 0.0;            // |tr P_k - d_k|
};

AlgebraDefects observable_defects(const Observable& obs, const Matrix& h) {
  AlgebraDefects d;
  const long n = obs.dim();
  Matrix sum = Matrix::Zero(n, n);
  Matrix recon = Matrix::Zero(n, n);
  for (long k = 0; k < obs.group_count(); ++k) {
    const Matrix& p = obs.projector(k);
    d.algebra = std::max(d.algebra, max_abs_diff(p * p, p));
    d.algebra = std::max(d.algebra, max_abs_diff(p.adjoint(), p));
    for (long l = k + 1; l < obs.group_count(); ++l) {
      d.algebra = std::max(d.algebra, (p * obs.projector(l)).cwiseAbs().maxCoeff());
    }
    d.rank = std::max(d.rank, std::abs(p.trace().real() - static_cast<double>(obs.degeneracy(k))));
    sum += p;
    recon += obs.eigenvalue(k) * p;
  }
  d.algebra = std::max(d.algebra, max_abs_diff(sum, Matrix::Identity(n, n)));
  d.reconstruction = max_abs_diff(recon, h);
  return d;
}

std::vector<CheckRow> check_projector_algebra(const VerifyOptions& opt) {
  AlgebraDefects worst;
  long grouping_mismatches = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    RandomStream rng = derive_stream(opt.seed, kAlgebraStreams + i);
    const long dim = 2 + static_cast<long>(i % 7);
    const bool degenerate = i % 2 == 0;
    const Matrix h = random_hermitian(dim, rng, degenerate);
    const Observable obs = spectral_decompose(h);
    const auto d = observable_defects(obs, h);
    worst.algebra = std::max(worst.algebra, d.algebra);
    worst.reconstruction = std::max(worst.reconstruction, d.reconstruction);
    worst.rank = std::max(worst.rank, d.rank);
    long total = 0;
    for (long k = 0; k < obs.group_count(); ++k) total += obs.degeneracy(k);
    grouping_mismatches += total != dim;
  }
  return {
      within("C1.algebra", "projectors idempotent, Hermitian, orthogonal, complete (200 cases)",
             worst.algebra, 0.0, 1e-12),
      within("C1.reconstruction", "sum_k lambda_k P_k reproduces H (200 cases)",
             worst.reconstruction, 0.0, 1e-10),
      within("C1.rank", "rank(P_k) = d_k and sum d_k = dim (200 cases)",
             worst.rank + static_cast<double>(grouping_mismatches), 0.0, 1e-10),
  };
}

std::vector<CheckRow> check_basis_independence(const VerifyOptions& opt) {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    RandomStream rng = derive_stream(opt.seed, kBasisStreams + i);
    const long dim = 2 + static_cast<long>(i % 7);
    const long d = 2 + static_cast<long>(rng.uniform() * static_cast<double>(dim - 1));
    const Matrix u = random_unitary(dim, rng);
    const Matrix span = u.leftCols(d);
    const Matrix rotated = span * random_unitary(d, rng);

    std::vector<Eigenspace> a{{0.0, span}};
    std::vector<Eigenspace> b{{0.0, rotated}};
    if (d < dim) {
      a.push_back({1.0, u.rightCols(dim - d)});
      b.push_back({1.0, u.rightCols(dim - d)});
    }
    const Observable first = Observable::from_eigenspaces(std::move(a));
    const Observable second = Observable::from_eigenspaces(std::move(b));
    worst = std::max(worst, max_abs_diff(first.projector(0), second.projector(0)));
  }
  return {within("C2.basis", "degenerate projector independent of the chosen basis (100 cases)",
                 worst, 0.0, 1e-10)};
}

std::vector<CheckRow> check_ideal_protocol(const VerifyOptions& opt) {
  std::vector<CheckRow> rows;
  const DecisionRule rule = opt.inject_fault ? &decide_all_minus : &decide_any_minus;
  bool all_mc = true;
  double worst_sigmas = 0.0;
  std::ostringstream detail;
  for (int m = 1; m <= 6; ++m) {
    DiscriminationConfig cfg;
    cfg.delta = 0.1;
    cfg.m = m;
    cfg.seed = stream_seed(opt.seed, kProtocolStreams + static_cast<std::uint64_t>(m));
    cfg.rule = rule;
    const auto r = monte_carlo_error_rate(cfg, 100000, {std::nullopt, opt.execution});
    const double reference = std::ldexp(1.0, -m - 1);
    const bool ok = r.sigmas <= 3.0;
    all_mc = all_mc && ok;
    worst_sigmas = std::max(worst_sigmas, r.sigmas);
    detail << "m=" << m << ":" << format_double(r.empirical_error) << " ";
    rows.push_back(make_row("C3.mc.m" + std::to_string(m),
                            "Monte Carlo error(m=" + std::to_string(m) + ") = 2^{-m-1}, 1e5 trials",
                            r.empirical_error, reference, 3.0 * r.stderr_analytic, ok,
                            "sigmas=" + format_double(r.sigmas)));
  }
  rows.insert(rows.begin(), make_row("C3.mc", "error(m) = 2^{-m-1}, m=1..6", worst_sigmas, 0.0,
                                     3.0, all_mc, detail.str()));

  double worst_rel = 0.0;
  double worst_i = 0.0;
  for (int m = 1; m <= 10; ++m) {
    DiscriminationConfig cfg;
    cfg.m = m;
    cfg.rule = rule;
    const auto e = enumerate_error_probability(cfg);
    const double reference = std::ldexp(1.0, -m - 1);
    worst_rel = std::max(worst_rel, std::abs(e.total - reference) / reference);
    worst_rel = std::max(worst_rel, std::abs(e.given_j - 2.0 * reference) / (2.0 * reference));
    worst_i = std::max(worst_i, e.given_i);
  }
  rows.push_back(within("C3.enum", "enumerated error(m) = 2^{-m-1}, m=1..10 (relative)",
                        worst_rel, 0.0, 1e-14));
  rows.push_back(within("C3.enum.I", "enumerated error given I = 0, m=1..10", worst_i, 0.0, 1e-14));
  return rows;
}

std::vector<CheckRow> check_identity(const VerifyOptions& opt) {
  RandomStream rng = derive_stream(opt.seed, kProtocolStreams + 100);
  const Observable id = identity_observable(2);
  const auto outcome = measure(ket_plus(), id, rng);
  const double f = fidelity(std::get<PureState>(outcome.post_state), ket_plus());

  DiscriminationConfig cfg;
  cfg.m = 1;
  cfg.seed = stream_seed(opt.seed, kProtocolStreams + 101);
  if (opt.inject_fault) cfg.rule = &decide_all_minus;
  const auto r = monte_carlo_error_rate(cfg, 10000, {Hypothesis::I, opt.execution});
  const double plus = static_cast<double>(r.tally.trials - r.tally.minus_outcomes);
  return {
      within("C4.fidelity", "Lueders measurement of |+> by I returns |+>", f, 1.0, 1e-12),
      make_row("C4.interference", "interference outcome plus in 10^4/10^4 trials", plus, 10000.0,
               0.0, r.tally.minus_outcomes == 0 && r.tally.trials == 10000),
  };
}

std::vector<CheckRow> check_angle_law(const VerifyOptions& opt) {
  constexpr std::uint64_t kSamples = 1000000;
  RandomStream angles = derive_stream(opt.seed, kAngleStreams);
  bool all_ok = true;
  double worst_sigmas = 0.0;
  double worst_exact = 0.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const double alpha = angles.uniform() * kHalfPi;
    const double law = plus_probability_given_alpha(alpha);
    const Observable obs = perturbed_observable(alpha);
    worst_exact = std::max(worst_exact, std::abs(chain_plus_probability(obs) - law));
    const auto counts =
        simulate_chain(obs, kSamples, stream_seed(opt.seed, kAngleStreams + 1 + i), opt.execution);
    const double sigma = binomial_stderr(law, kSamples);
    const double dev = deviation_in_sigmas(counts.fraction(), law, sigma);
    worst_sigmas = std::max(worst_sigmas, dev);
    all_ok = all_ok && dev <= 3.0;
  }
  return {
      make_row("C5.mc", "two-step chain matches cos^4 + sin^4 within 3 sigma (50 angles, 1e6 each)",
               worst_sigmas, 0.0, 3.0, all_ok),
      within("C5.exact", "exact Born chain equals cos^4 + sin^4 (50 angles)", worst_exact, 0.0,
             1e-12),
  };
}

std::vector<CheckRow> check_uniform_average(const VerifyOptions& opt) {
  constexpr std::uint64_t kSamples = 1000000;
  const NoiseModel uniform = NoiseModel::uniform();
  const double quad = average_plus_probability(uniform);
  const auto counts =
      simulate_noisy_chain(uniform, kSamples, stream_seed(opt.seed, kUniformStreams), opt.execution);
  const double sigma = binomial_stderr(0.75, kSamples);
  return {
      within("C6.quadrature", "uniform average = 0.75", quad, 0.75, 1e-9),
      within("C6.mc", "uniform average = 0.75 by Monte Carlo, 1e6 trials", counts.fraction(), 0.75,
             3.0 * sigma),
  };
}

std::vector<CheckRow> check_von_mises_limits(const VerifyOptions&) {
  const double uniform = average_plus_probability(NoiseModel::uniform());
  const double q0 = average_plus_probability(NoiseModel::von_mises(0.0));
  const double q20 = average_plus_probability(NoiseModel::von_mises(20.0));
  bool monotone = true;
  bool bounded = true;
  double previous = 1.0;
  std::ostringstream detail;
  for (int i = 0; i <= 40; ++i) {
    const double p = average_plus_probability(NoiseModel::von_mises(0.5 * i));
    monotone = monotone && p <= previous;
    // The bounds carry the quadrature precision; q = 0 lands on 3/4 only to 1e-9.
    bounded = bounded && p >= 0.5 - 1e-9 && p <= 0.75 + 1e-9;
    previous = p;
    if (i % 10 == 0) detail << "q=" << 0.5 * i << ":" << format_double(p) << " ";
  }
  return {
      within("C7.q0", "von Mises q=0 average equals uniform average", q0, uniform, 1e-9),
      within("C7.q20", "von Mises q=20 average within 0.01 of 1/2", q20, 0.5, 0.01),
      make_row("C7.monotone", "average nonincreasing in q over 0..20 step 0.5, within [1/2, 3/4]",
               previous, 0.5, 0.0, monotone && bounded, detail.str()),
  };
}

std::vector<CheckRow> check_purity(const VerifyOptions&) {
  const PureState plus = ket_plus();
  const Observable id = identity_observable(2);
  const double lueders = DensityMatrix::from_pure(lueders_collapse(plus, id, 0)).purity();
  const double lueders_unread_purity = lueders_unread(DensityMatrix::from_pure(plus), id).purity();
  Matrix z_basis(2, 2);
  z_basis.col(0) = ket_one().amplitudes();
  z_basis.col(1) = ket_zero().amplitudes();
  const double von_neumann = von_neumann_measure_unread(plus, z_basis).purity();
  return {
      within("C8.lueders", "Lueders post-state purity for I on |+> is 1", lueders, 1.0, 1e-12),
      within("C8.lueders.unread", "unread Lueders channel keeps purity 1 for I on |+>",
             lueders_unread_purity, 1.0, 1e-12),
      within("C8.von_neumann", "unread von Neumann in {|1>,|0>} gives purity 1/2", von_neumann, 0.5,
             1e-12),
  };
}

std::vector<CheckRow> check_parallel_equivalence(const VerifyOptions& opt) {
  DiscriminationConfig cfg;
  cfg.m = 3;
  cfg.seed = stream_seed(opt.seed, kEquivalenceStreams);
  const auto serial = monte_carlo_error_rate(cfg, 20000, {std::nullopt, Execution::serial});
  const auto parallel = monte_carlo_error_rate(cfg, 20000, {std::nullopt, Execution::parallel});
  const Observable obs = perturbed_observable(0.3);
  const auto chain_seed = stream_seed(opt.seed, kEquivalenceStreams + 1);
  const bool chains_equal = simulate_chain(obs, 50000, chain_seed, Execution::serial) ==
                            simulate_chain(obs, 50000, chain_seed, Execution::parallel);
  const bool ok = serial.tally == parallel.tally && chains_equal;
  return {make_row("C9.parallel", "parallel tallies identical to sequential tallies",
                   static_cast<double>(parallel.tally.errors),
                   static_cast<double>(serial.tally.errors), 0.0, ok)};
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
}

VerifyReport verify_all(const VerifyOptions& options) {
  using Check = std::function<std::vector<CheckRow>(const VerifyOptions&)>;
  const std::vector<std::pair<std::string, Check>> checks = {
      {"C1", check_projector_algebra},  {"C2", check_basis_independence},
      {"C3", check_ideal_protocol},     {"C4", check_identity},
      {"C5", check_angle_law},          {"C6", check_uniform_average},
      {"C7", check_von_mises_limits},   {"C8", check_purity},
      {"C9", check_parallel_equivalence},
  };
  VerifyReport report;
  report.seed = options.seed;
  for (const auto& [id, check] : checks) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    try {
      auto rows = check(options);
      report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    } catch (const std::exception& e) {
      report.rows.push_back(make_row(id, "check raised an error", 0.0, 0.0, 0.0, false, e.what()));
    }
  }
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"id", r.id},
                    {"claim", r.claim},
                    {"passed", r.passed},
                    {"value", r.value},
                    {"reference", r.reference},
                    {"tolerance", r.tolerance},
                    {"detail", r.detail}});
  }
  return {{"command", "verify"},
          {"seed", report.seed},
          {"passed", report.all_passed()},
          {"checks", rows}};
}

std::string verify_table(const VerifyReport& report) {
  std::ostringstream out;
  for (const auto& r : report.rows) {
    out << (r.passed ? "PASS " : "FAIL ") << r.id;
    for (std::size_t pad = r.id.size(); pad < 20; ++pad) out << ' ';
    out << r.claim << "  [value " << format_double(r.value) << ", reference "
        << format_double(r.reference) << ", tol " << format_double(r.tolerance) << "]";
    if (!r.detail.empty()) out << "  " << r.detail;
    out << '\n';
  }
  out << (report.all_passed() ? "ALL CHECKS PASSED" : "VERIFICATION FAILED") << '\n';
  return out.str();
}

}  // namespace qsim
