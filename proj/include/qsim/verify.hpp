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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsim/parallel.hpp"

namespace qsim {

/// One line of the verification table.
struct CheckRow {
  std::string id;
  std::string claim;
  bool passed = false;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  Execution execution = Execution::parallel;
  // Swaps the protocol's decision rule for a wrong one so the failure path
  // can be exercised end to end.
  bool inject_fault = false;
  // Check families to run ("C1" .. "C9"); empty runs all of them.
  std::vector<std::string> only;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckRow> rows;
  bool all_passed() const;
};

/// Reproduces every quantitative claim at its acceptance tolerance. Failures
/// are recorded in the rows; nothing is thrown for a failed check.
VerifyReport verify_all(const VerifyOptions& options);

nlohmann::json to_json(const VerifyReport& report);

/// Fixed-width pass/fail table, one row per check.
std::string verify_table(const VerifyReport& report);

}  // namespace qsim
