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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsim/noise.hpp"
#include "qsim/protocol.hpp"
#include "qsim/stats.hpp"

namespace qsim {

/// One reported quantity. Binomial entries carry a Wilson interval; any
/// entry with an analytic reference also carries its deviation in sigmas.
struct MetricEntry {
  std::string name;
  double empirical = 0.0;
  std::optional<double> analytic;
  std::optional<Interval> ci;
  std::uint64_t trials = 0;
  std::optional<double> sigmas;
};

/// Binomial metric: successes / trials with a 95% Wilson interval and, when
/// `analytic` is given, the deviation in binomial sigmas at the analytic rate.
MetricEntry binomial_metric(std::string name, std::uint64_t successes, std::uint64_t trials,
                            std::optional<double> analytic);

/// Deterministic metric (e.g. a quadrature value) compared to a reference;
/// sigmas is reported against `sigma` (an absolute tolerance scale).
MetricEntry exact_metric(std::string name, double value, std::optional<double> analytic,
                         double sigma);

struct ExperimentReport {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<MetricEntry> metrics;
  // Wall time is left out of serialized output unless requested, so that a
  // fixed configuration always serializes to the same bytes.
  std::optional<double> wall_time_s;
};

nlohmann::json to_json(const MetricEntry& entry);
nlohmann::json to_json(const ExperimentReport& report);

nlohmann::json to_json(const DiscriminationConfig& cfg);

/// {empirical_error, ci_low, ci_high, analytic_error, trials, m, ...}
nlohmann::json discrimination_json(const DiscriminationReport& report);

/// Header and one row per trial: trial,truth,outcomes,decision,correct.
std::string trials_csv(const std::vector<TrialRecord>& records);

struct SweepRow {
  double q;
  double p_plus_quadrature;
  double p_plus_montecarlo;
  double mc_stderr;
};

/// Header q,p_plus_quadrature,p_plus_montecarlo,mc_stderr and one row each.
std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace qsim
