/*
 * Copyright 2026 The pachner33 Authors
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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pachner33/pachner.hpp"
#include "pachner33/scalar.hpp"

namespace pachner33 {

/// Independent generator for one trial, derived from (seed, trial index).
Rng trial_rng(std::uint64_t seed, std::size_t index);

/// Calls body(i) for i in [0, count) on up to `threads` workers (0 means
/// hardware concurrency). Results must be written to per-index slots.
/// The first exception thrown by any call is rethrown after all workers join.
void run_trials(std::size_t count, const std::function<void(std::size_t)>& body,
                unsigned threads = 0);

struct TrialRecord {
  std::size_t index = 0;
  bool passed = false;
  double max_residual = 0.0;
  std::size_t coefficients = 0;
  std::size_t mismatches = 0;
  bool plus_sign_matches = false;
  std::string error;
  /// Command-specific payload (defects, ranks, h values, ...).
  nlohmann::json details = nlohmann::json::object();
};

TrialRecord make_trial_record(std::size_t index, const Verification& v);

/// Result of a verification campaign. JSON layout (schema_version 1):
///   schema_version, command, config{...}, trials[], summary{passed, failed,
///   max_residual}, p_table_used{simplex: p}.
struct Report {
  static constexpr int kSchemaVersion = 1;

  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::optional<MoveConfig> move;
  /// Residuals are reported in summary only for complex campaigns.
  bool numeric = false;
  std::vector<TrialRecord> trials;

  std::size_t passed() const;
  std::size_t failed() const { return trials.size() - passed(); }
  bool all_passed() const { return failed() == 0; }
  double max_residual() const;

  nlohmann::json to_json() const;
  /// One line per trial plus a summary line.
  std::string to_human() const;
};

nlohmann::json p_table_json(const MoveConfig& move);

}  // namespace pachner33
