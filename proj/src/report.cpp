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

#include "qsim/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace qsim {

using nlohmann::json;

MetricEntry binomial_metric(std::string name, std::uint64_t successes, std::uint64_t trials,
                            std::optional<double> analytic) {
  MetricEntry e;
  e.name = std::move(name);
  e.trials = trials;
  e.empirical = static_cast<double>(successes) / static_cast<double>(trials);
  e.ci = wilson_interval(successes, trials, 0.95);
  e.analytic = analytic;
  if (analytic) {
    e.sigmas = deviation_in_sigmas(e.empirical, *analytic, binomial_stderr(*analytic, trials));
  }
  return e;
}

MetricEntry exact_metric(std::string name, double value, std::optional<double> analytic,
                         double sigma) {
  MetricEntry e;
  e.name = std::move(name);
  e.empirical = value;
  e.analytic = analytic;
  if (analytic) e.sigmas = deviation_in_sigmas(value, *analytic, sigma);
  return e;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json to_json(const MetricEntry& e) {
  json j{{"name", e.name}, {"empirical", e.empirical}};
  j["analytic"] = e.analytic ? json(*e.analytic) : json(nullptr);
  if (e.ci) {
    j["ci_low"] = e.ci->low;
    j["ci_high"] = e.ci->high;
  }
  if (e.trials > 0) j["trials"] = e.trials;
  if (e.sigmas) j["sigmas"] = std::isfinite(*e.sigmas) ? json(*e.sigmas) : json("inf");
  return j;
}

json to_json(const ExperimentReport& r) {
  json metrics = json::array();
  for (const auto& m : r.metrics) metrics.push_back(to_json(m));
  json j{{"command", r.command}, {"config", r.config}, {"metrics", metrics}};
  if (r.wall_time_s) j["wall_time_s"] = *r.wall_time_s;
  return j;
}

json to_json(const DiscriminationConfig& cfg) {
  return {{"delta", cfg.delta},  {"m", cfg.m},
          {"prior_j", cfg.prior_j}, {"seed", cfg.seed},
          {"early_stop", cfg.early_stop}};
}

json discrimination_json(const DiscriminationReport& r) {
  const auto& t = r.tally;
  json j{{"empirical_error", r.empirical_error},
         {"ci_low", r.ci.low},
         {"ci_high", r.ci.high},
         {"analytic_error", r.analytic_error},
         {"trials", t.trials},
         {"m", r.config.m},
         {"errors", t.errors},
         {"sigmas", std::isfinite(r.sigmas) ? json(r.sigmas) : json("inf")},
         {"truth_j_trials", t.truth_j},
         {"errors_given_i", t.errors_given_i},
         {"errors_given_j", t.errors_given_j},
         {"mean_copies_used", static_cast<double>(t.copies_used) / static_cast<double>(t.trials)},
         {"config", to_json(r.config)}};
  j["fixed_truth"] = r.fixed_truth ? json(std::string(to_string(*r.fixed_truth))) : json(nullptr);
  return j;
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "trial,truth,outcomes,decision,correct\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    std::string outcomes;
    outcomes.reserve(r.outcomes.size());
    for (auto o : r.outcomes) outcomes.push_back(to_char(o));
    out << i << ',' << to_string(r.truth) << ',' << outcomes << ',' << to_string(r.decision)
        << ',' << (r.correct ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "q,p_plus_quadrature,p_plus_montecarlo,mc_stderr\n";
  for (const auto& r : rows) {
    out << format_double(r.q) << ',' << format_double(r.p_plus_quadrature) << ','
        << format_double(r.p_plus_montecarlo) << ',' << format_double(r.mc_stderr) << '\n';
  }
  return out.str();
}

json sweep_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"q", r.q},
                   {"p_plus_quadrature", r.p_plus_quadrature},
                   {"p_plus_montecarlo", r.p_plus_montecarlo},
                   {"mc_stderr", r.mc_stderr}});
  }
  return out;
}

}  // namespace qsim
