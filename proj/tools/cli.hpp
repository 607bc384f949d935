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
#include <iosfwd>
#include <string>
#include <string_view>

#include "pachner33/campaign.hpp"
#include "pachner33/scalar.hpp"

namespace pachner33::cli {

enum class OutputFormat { Human, Json };

/// Exit codes of the tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  /// "verify det33", "verify cocycle", "verify h33", "verify ell33" or "rank".
  std::string command;
  /// Empty selects the command default (rational, or complex for elliptic runs).
  std::string field;
  /// 0 draws a seed from std::random_device; the drawn value is echoed.
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  double tolerance = 1e-8;
  Complex k{0.3, 0.0};
  /// "det" or "ell" (rank, cocycle).
  std::string mode = "det";
  OutputFormat output = OutputFormat::Human;
  /// Worker threads for trials; 0 = hardware concurrency.
  unsigned threads = 0;
};

/// Parses "0.3", "-0.2-0.3i", "0.7+0.1i", "0.5i".
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

Report cmd_verify_det33(const RunConfig& cfg);
Report cmd_verify_cocycle(const RunConfig& cfg);
Report cmd_verify_h33(const RunConfig& cfg);
Report cmd_verify_ell33(const RunConfig& cfg);
Report cmd_rank(const RunConfig& cfg);

/// Dispatches on cfg.command, writes the report to `out`, returns the exit
/// code. Configuration errors are reported on `err` with kExitUsage.
int execute(RunConfig cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pachner33::cli
