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

#include "pachner33/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace pachner33 {

Rng trial_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

void run_trials(std::size_t count, const std::function<void(std::size_t)>& body, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

TrialRecord make_trial_record(std::size_t index, const Verification& v) {
  TrialRecord r;
  r.index = index;
  r.passed = v.passed;
  r.max_residual = v.max_residual;
  r.coefficients = v.coefficient_count;
  r.mismatches = v.mismatches;
  r.plus_sign_matches = v.plus_sign_matches;
  return r;
}

std::size_t Report::passed() const {
  return static_cast<std::size_t>(
      std::ranges::count_if(trials, [](const TrialRecord& t) { return t.passed; }));
}

double Report::max_residual() const {
  double out = 0.0;
  for (const auto& t : trials) out = std::max(out, t.max_residual);
  return out;
}

nlohmann::json p_table_json(const MoveConfig& move) {
  nlohmann::json table = nlohmann::json::object();
  for (const auto& s : move.lhs) table[s.name()] = s.orientation;
  for (const auto& s : move.rhs) table[s.name()] = s.orientation;
  return table;
}

nlohmann::json Report::to_json() const {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["config"] = config;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& t : trials) {
    nlohmann::json j;
    j["index"] = t.index;
    j["passed"] = t.passed;
    j["coefficients"] = t.coefficients;
    j["mismatches"] = t.mismatches;
    if (numeric) j["max_residual"] = t.max_residual;
    j["plus_sign_matches"] = t.plus_sign_matches;
    if (!t.error.empty()) j["error"] = t.error;
    if (!t.details.empty()) j["details"] = t.details;
    list.push_back(std::move(j));
  }
  doc["trials"] = std::move(list);
  doc["summary"] = {{"passed", passed()}, {"failed", failed()}};
  doc["summary"]["max_residual"] = numeric ? nlohmann::json(max_residual()) : nlohmann::json(0.0);
  doc["p_table_used"] = move ? p_table_json(*move) : nlohmann::json(nullptr);
  return doc;
}

std::string Report::to_human() const {
  std::ostringstream out;
  out << command;
  for (const auto& [key, value] : config.items()) out << ' ' << key << '=' << value.dump();
  out << '\n';
  for (const auto& t : trials) {
    out << "trial " << std::setw(4) << t.index << "  " << (t.passed ? "PASS" : "FAIL");
    if (numeric) {
      out << "  residual " << std::scientific << std::setprecision(3) << t.max_residual
          << std::defaultfloat;
    } else if (t.coefficients > 0) {
      out << "  coefficients " << t.coefficients << "  mismatches " << t.mismatches;
    }
    if (!t.details.empty()) out << "  " << t.details.dump();
    if (!t.error.empty()) out << "  error: " << t.error;
    out << '\n';
  }
  out << "summary: " << passed() << " passed, " << failed() << " failed";
  if (numeric) out << ", max residual " << std::scientific << std::setprecision(3) << max_residual();
  out << '\n';
  return out.str();
}

}  // namespace pachner33
