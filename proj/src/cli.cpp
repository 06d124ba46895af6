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

#include "qsim/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qsim/errors.hpp"
#include "qsim/lueders.hpp"
#include "qsim/noise.hpp"
#include "qsim/protocol.hpp"
#include "qsim/report.hpp"
#include "qsim/serialize.hpp"
#include "qsim/verify.hpp"

namespace qsim {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kDefaultSeed = 7;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct GlobalOptions {
  std::uint64_t seed = kDefaultSeed;
  std::vector<CLI::Option*> seed_flags;  // one per subcommand
  std::uint64_t trials = 0;  // 0: command default
  std::string format;        // empty: command default
  std::string out_path;
  bool timing = false;
  bool serial = false;
};

std::uint64_t resolve_seed(const GlobalOptions& g) {
  for (const CLI::Option* flag : g.seed_flags) {
    if (flag->count() > 0) return g.seed;
  }
  if (const char* env = std::getenv("QSIM_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const std::string text(env);
      if (text.front() == '-') throw std::invalid_argument("negative");
      const auto value = std::stoull(text, &used, 0);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return value;
    } catch (const std::exception&) {
      throw UsageError("QSIM_SEED is not an unsigned 64-bit integer: " + std::string(env));
    }
  }
  return g.seed;
}

Execution execution_of(const GlobalOptions& g) {
  return g.serial ? Execution::serial : Execution::parallel;
}

std::string format_of(const GlobalOptions& g, const char* fallback) {
  const std::string f = g.format.empty() ? fallback : g.format;
  if (f != "json" && f != "csv") throw UsageError("--format must be json or csv");
  return f;
}

void emit(const GlobalOptions& g, const std::string& text, std::ostream& out) {
  if (g.out_path.empty() || g.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream file(g.out_path, std::ios::binary);
  if (!file) throw Error("cannot open output file " + g.out_path);
  file << text;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

using AnyState = std::variant<PureState, DensityMatrix>;

AnyState parse_state(const std::string& spec) {
  if (spec == "plus") return ket_plus();
  if (spec == "minus") return ket_minus();
  if (spec == "one") return ket_one();
  if (spec == "zero") return ket_zero();
  if (spec == "mixed") return DensityMatrix::maximally_mixed(2);
  const json doc = read_json_file(spec);
  const long dim = doc.value("dim", 0L);
  const auto entries = doc.contains("matrix_re") ? doc["matrix_re"].size() : 0;
  if (dim > 0 && entries == static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) &&
      dim > 1) {
    return density_matrix_from_json(doc);
  }
  return pure_state_from_json(doc);
}

Observable parse_observable(const std::string& spec, double delta) {
  if (spec == "I") return identity_observable(2);
  if (spec == "J") return j_observable(delta);
  if (spec == "X") return interference_observable();
  return observable_from_json(read_json_file(spec));
}

std::optional<NoiseModel> parse_noise(const std::string& kind, double q, double mean) {
  if (kind.empty() || kind == "none") return std::nullopt;
  if (kind == "uniform") return NoiseModel::uniform();
  if (kind == "vonmises") return NoiseModel::von_mises(q, mean);
  throw UsageError("unknown noise model '" + kind + "' (expected none, uniform or vonmises)");
}

struct CountVector {
  std::vector<std::uint64_t> counts;
  CountVector& operator+=(const CountVector& o) {
    if (counts.size() < o.counts.size()) counts.resize(o.counts.size(), 0);
    for (std::size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
    return *this;
  }
};

// measure ---------------------------------------------------------------

struct MeasureArgs {
  std::string state = "plus";
  std::string observable = "J";
  double delta = 0.1;
};

int run_measure(const MeasureArgs& a, const GlobalOptions& g, std::ostream& out) {
  const auto start = Clock::now();
  const std::uint64_t seed = resolve_seed(g);
  const std::uint64_t trials = g.trials == 0 ? 10000 : g.trials;
  const std::string format = format_of(g, "json");
  const AnyState state = parse_state(a.state);
  const Observable obs = parse_observable(a.observable, a.delta);

  const auto probs = std::visit([&](const auto& s) { return outcome_probabilities(s, obs); }, state);
  auto measure_once = [&](RandomStream& rng) {
    return std::visit([&](const auto& s) { return measure(s, obs, rng); }, state);
  };
  RandomStream first_rng = derive_stream(seed, 0);
  const MeasurementOutcome first = measure_once(first_rng);

  const auto tally = reduce_trials<CountVector>(trials, execution_of(g), [&](std::uint64_t i,
                                                                             CountVector& t) {
    RandomStream rng = derive_stream(seed, i);
    const auto o = measure_once(rng);
    const auto k = static_cast<std::size_t>(o.group_index);
    if (t.counts.size() <= k) t.counts.resize(probs.size(), 0);
    ++t.counts[k];
  });

  std::vector<std::uint64_t> counts = tally.counts;
  counts.resize(probs.size(), 0);

  if (format == "csv") {
    std::ostringstream csv;
    csv << "k,eigenvalue,probability,frequency\n";
    for (std::size_t k = 0; k < probs.size(); ++k) {
      csv << k << ',' << format_double(probs[k].eigenvalue) << ','
          << format_double(probs[k].probability) << ','
          << format_double(static_cast<double>(counts[k]) / static_cast<double>(trials)) << '\n';
    }
    emit(g, csv.str(), out);
    return kExitOk;
  }

  ExperimentReport report;
  report.command = "measure";
  report.config = {{"state", a.state}, {"observable", a.observable}, {"delta", a.delta},
                   {"seed", seed},     {"trials", trials}};
  json prob_json = json::array();
  for (std::size_t k = 0; k < probs.size(); ++k) {
    prob_json.push_back(
        {{"k", k}, {"eigenvalue", probs[k].eigenvalue}, {"probability", probs[k].probability}});
    report.metrics.push_back(binomial_metric("frequency[" + std::to_string(k) + "]", counts[k],
                                             trials, probs[k].probability));
  }
  if (g.timing) report.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  json doc = to_json(report);
  doc["probabilities"] = prob_json;
  doc["first_outcome"] = to_json(first);
  emit(g, doc.dump(2) + "\n", out);
  return kExitOk;
}

// discriminate ----------------------------------------------------------

struct DiscriminateArgs {
  int m = 1;
  double delta = 0.1;
  double prior_j = 0.5;
  bool early_stop = false;
  std::string csv_path;
  std::string fixed_truth;
  std::string noise_i;
  std::string noise_j;
  double q = 0.0;
  double alpha_mean = kQuarterPi;
  double epsilon = 0.05;
  bool frozen_noise = false;
};

int run_noisy(const DiscriminateArgs& a, const GlobalOptions& g, std::ostream& out,
              std::uint64_t seed, std::uint64_t trials, Clock::time_point start) {
  HypothesisModel hyp_i{identity_observable(2), parse_noise(a.noise_i, a.q, a.alpha_mean)};
  HypothesisModel hyp_j{j_observable(a.delta), parse_noise(a.noise_j, a.q, a.alpha_mean)};
  NoisyDiscriminationConfig cfg;
  cfg.m = a.m;
  cfg.epsilon = a.epsilon;
  cfg.prior_j = a.prior_j;
  cfg.seed = seed;
  cfg.frozen_noise = a.frozen_noise;
  const auto r = noisy_discrimination(hyp_i, hyp_j, cfg, trials, execution_of(g));

  ExperimentReport report;
  report.command = "discriminate";
  report.config = {{"m", a.m},          {"delta", a.delta},
                   {"prior_j", a.prior_j}, {"seed", seed},
                   {"trials", trials},  {"noise_i", a.noise_i.empty() ? "none" : a.noise_i},
                   {"noise_j", a.noise_j.empty() ? "none" : a.noise_j},
                   {"q", a.q},          {"alpha_mean", a.alpha_mean},
                   {"epsilon", a.epsilon}, {"frozen_noise", a.frozen_noise}};
  report.metrics.push_back(binomial_metric("error_rate", r.tally.errors, r.tally.trials, std::nullopt));
  if (g.timing) report.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  json doc = to_json(report);
  doc["empirical_error"] = r.empirical_error;
  doc["ci_low"] = r.ci.low;
  doc["ci_high"] = r.ci.high;
  doc["analytic_error"] = nullptr;
  doc["trials"] = r.tally.trials;
  doc["m"] = a.m;
  doc["p_i"] = r.p_i;
  doc["p_j"] = r.p_j;
  doc["threshold"] = r.threshold;
  doc["m_bound"] = r.m_bound;
  doc["hoeffding_error_bound"] = std::exp(-2.0 * a.m * std::pow(0.5 * (r.p_i - r.p_j), 2));

  if (format_of(g, "json") == "csv") {
    std::ostringstream csv;
    csv << "empirical_error,ci_low,ci_high,p_i,p_j,m_bound,trials,m\n"
        << format_double(r.empirical_error) << ',' << format_double(r.ci.low) << ','
        << format_double(r.ci.high) << ',' << format_double(r.p_i) << ',' << format_double(r.p_j)
        << ',' << r.m_bound << ',' << r.tally.trials << ',' << a.m << '\n';
    emit(g, csv.str(), out);
  } else {
    emit(g, doc.dump(2) + "\n", out);
  }
  return kExitOk;
}

int run_discriminate(const DiscriminateArgs& a, const GlobalOptions& g, std::ostream& out) {
  const auto start = Clock::now();
  const std::uint64_t seed = resolve_seed(g);
  const std::uint64_t trials = g.trials == 0 ? 100000 : g.trials;
  const std::string format = format_of(g, "json");
  if (!a.noise_i.empty() || !a.noise_j.empty()) {
    if (!a.csv_path.empty()) throw UsageError("--csv is only available without noise models");
    return run_noisy(a, g, out, seed, trials, start);
  }

  DiscriminationConfig cfg;
  cfg.m = a.m;
  cfg.delta = a.delta;
  cfg.prior_j = a.prior_j;
  cfg.seed = seed;
  cfg.early_stop = a.early_stop;
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  MonteCarloOptions opts;
  opts.execution = execution_of(g);
  if (a.fixed_truth == "I") opts.fixed_truth = Hypothesis::I;
  else if (a.fixed_truth == "J") opts.fixed_truth = Hypothesis::J;
  else if (!a.fixed_truth.empty()) throw UsageError("--truth must be I or J");

  DiscriminationReport r;
  if (!a.csv_path.empty()) {
    const auto records = run_trials(cfg, trials, opts);
    DiscriminationTally tally;
    for (const auto& rec : records) tally.add(rec);
    r = summarize(cfg, opts.fixed_truth, tally);
    std::ofstream csv(a.csv_path, std::ios::binary);
    if (!csv) throw Error("cannot open " + a.csv_path);
    csv << trials_csv(records);
  } else {
    r = monte_carlo_error_rate(cfg, trials, opts);
  }

  if (format == "csv") {
    std::ostringstream csv;
    csv << "empirical_error,ci_low,ci_high,analytic_error,trials,m\n"
        << format_double(r.empirical_error) << ',' << format_double(r.ci.low) << ','
        << format_double(r.ci.high) << ',' << format_double(r.analytic_error) << ','
        << r.tally.trials << ',' << cfg.m << '\n';
    emit(g, csv.str(), out);
    return kExitOk;
  }
  json doc = discrimination_json(r);
  ExperimentReport report;
  report.metrics.push_back(binomial_metric("error_rate", r.tally.errors, r.tally.trials, r.analytic_error));
  doc["command"] = "discriminate";
  doc["metrics"] = to_json(report)["metrics"];
  if (g.timing) doc["wall_time_s"] = std::chrono::duration<double>(Clock::now() - start).count();
  emit(g, doc.dump(2) + "\n", out);
  return kExitOk;
}

// noise-sweep -----------------------------------------------------------

struct SweepArgs {
  std::string model = "vonmises";
  double alpha_mean = kQuarterPi;
  std::string q_grid = "0:20:0.5";
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--q-grid must look like start:stop:step, got '" + text + "'");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0] || parts[0] < 0.0) {
    throw UsageError("--q-grid must look like start:stop:step with step > 0, got '" + text + "'");
  }
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (long i = 0; i <= n; ++i) grid.push_back(parts[0] + parts[2] * static_cast<double>(i));
  return grid;
}

int run_sweep(const SweepArgs& a, const GlobalOptions& g, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(g);
  const std::uint64_t trials = g.trials == 0 ? 100000 : g.trials;
  const std::string format = format_of(g, "csv");
  std::vector<std::pair<double, NoiseModel>> models;
  if (a.model == "uniform") {
    models.emplace_back(0.0, NoiseModel::uniform());
  } else if (a.model == "vonmises") {
    if (!(a.alpha_mean >= 0.0 && a.alpha_mean <= kHalfPi)) {
      throw UsageError("--alpha-mean must lie in [0, pi/2]");
    }
    for (double q : parse_grid(a.q_grid)) models.emplace_back(q, NoiseModel::von_mises(q, a.alpha_mean));
  } else {
    throw UsageError("--model must be uniform or vonmises");
  }

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& [q, model] = models[i];
    const double quad = average_plus_probability(model);
    const auto counts = simulate_noisy_chain(model, trials, stream_seed(seed, i), execution_of(g));
    const double p = counts.fraction();
    rows.push_back({q, quad, p, binomial_stderr(p, trials)});
  }
  if (format == "csv") {
    emit(g, sweep_csv(rows), out);
  } else {
    json doc{{"command", "noise-sweep"},
             {"config",
              {{"model", a.model}, {"alpha_mean", a.alpha_mean}, {"q_grid", a.q_grid},
               {"seed", seed}, {"trials", trials}}},
             {"rows", sweep_json(rows)}};
    emit(g, doc.dump(2) + "\n", out);
  }
  return kExitOk;
}

// verify ----------------------------------------------------------------

int run_verify(bool inject_fault, const std::vector<std::string>& only, const GlobalOptions& g,
               std::ostream& out, std::ostream& err) {
  VerifyOptions opts;
  opts.only = only;
  opts.seed = resolve_seed(g);
  opts.execution = execution_of(g);
  opts.inject_fault = inject_fault;
  const auto start = Clock::now();
  const VerifyReport report = verify_all(opts);
  const std::string format = format_of(g, "json");
  if (format == "csv") {
    std::ostringstream csv;
    csv << "id,passed,value,reference,tolerance\n";
    for (const auto& r : report.rows) {
      csv << r.id << ',' << (r.passed ? 1 : 0) << ',' << format_double(r.value) << ','
          << format_double(r.reference) << ',' << format_double(r.tolerance) << '\n';
    }
    emit(g, csv.str(), out);
  } else {
    json doc = to_json(report);
    if (g.timing) doc["wall_time_s"] = std::chrono::duration<double>(Clock::now() - start).count();
    emit(g, doc.dump(2) + "\n", out);
  }
  err << verify_table(report);
  return report.all_passed() ? kExitOk : kExitVerificationFailed;
}

void add_globals(CLI::App& app, GlobalOptions& g) {
  g.seed_flags.push_back(app.add_option("--seed", g.seed, "Master seed (env QSIM_SEED applies when absent)"));
  app.add_option("--trials", g.trials, "Number of trials or samples")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out_path, "Write the report to this path instead of stdout");
  app.add_flag("--timing", g.timing, "Include wall time in the report");
  app.add_flag("--serial", g.serial, "Run trial loops on one thread (reference path)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lueders measurement simulator", "qsim"};
  app.require_subcommand(1);

  GlobalOptions g;

  MeasureArgs measure_args;
  auto* measure_cmd = app.add_subcommand("measure", "Measure a state with an observable");
  measure_cmd->add_option("--state", measure_args.state,
                          "plus, minus, one, zero, mixed, or a JSON state file");
  measure_cmd->add_option("--observable", measure_args.observable, "I, J, X, or a JSON observable file");
  measure_cmd->add_option("--delta", measure_args.delta, "Spectral gap of J")->check(CLI::PositiveNumber);
  add_globals(*measure_cmd, g);

  DiscriminateArgs disc;
  auto* disc_cmd = app.add_subcommand("discriminate", "Decide between I and J from m copies of |+>");
  disc_cmd->add_option("--m", disc.m, "Copies per trial")->required()->check(CLI::PositiveNumber);
  disc_cmd->add_option("--delta", disc.delta, "Spectral gap of J")->required();
  disc_cmd->add_option("--prior-j", disc.prior_j, "Prior probability of J");
  disc_cmd->add_flag("--early-stop", disc.early_stop, "Stop a trial at its first minus outcome");
  disc_cmd->add_option("--csv", disc.csv_path, "Write per-trial records to this CSV file");
  disc_cmd->add_option("--truth", disc.fixed_truth, "Fix the true observable to I or J");
  disc_cmd->add_option("--noise-i", disc.noise_i, "Noise on the I apparatus: none, uniform, vonmises");
  disc_cmd->add_option("--noise-j", disc.noise_j, "Noise on the J apparatus: none, uniform, vonmises");
  disc_cmd->add_option("--q", disc.q, "von Mises concentration")->check(CLI::NonNegativeNumber);
  disc_cmd->add_option("--alpha-mean", disc.alpha_mean, "von Mises mean angle");
  disc_cmd->add_option("--epsilon", disc.epsilon, "Target error for the Hoeffding copy count");
  disc_cmd->add_flag("--frozen-noise", disc.frozen_noise, "Draw one angle per trial, not per copy");
  add_globals(*disc_cmd, g);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("noise-sweep", "Plus probability under eigenbasis noise");
  sweep_cmd->add_option("--model", sweep.model, "uniform or vonmises");
  sweep_cmd->add_option("--alpha-mean", sweep.alpha_mean, "von Mises mean angle");
  sweep_cmd->add_option("--q-grid", sweep.q_grid, "start:stop:step grid of q values");
  add_globals(*sweep_cmd, g);

  bool inject_fault = false;
  auto* verify_cmd = app.add_subcommand("verify", "Reproduce every checked claim");
  verify_cmd->add_flag("--inject-fault", inject_fault,
                       "Use a wrong decision rule to exercise the failure path");
  std::vector<std::string> only;
  verify_cmd->add_option("--only", only, "Run only these check families (C1..C9)")->delimiter(',');
  add_globals(*verify_cmd, g);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qsim: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (measure_cmd->parsed()) return run_measure(measure_args, g, out);
    if (disc_cmd->parsed()) return run_discriminate(disc, g, out);
    if (sweep_cmd->parsed()) return run_sweep(sweep, g, out);
    if (verify_cmd->parsed()) return run_verify(inject_fault, only, g, out, err);
  } catch (const UsageError& e) {
    err << "qsim: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "qsim: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "qsim: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qsim: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qsim
