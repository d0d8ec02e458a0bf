/*
 * Copyright 2026 The ttorus Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttorus/fourier.hpp"

namespace ttorus::cli {

enum class Command { spectrum, verify, index, summability, sweep, wedge, polar };

std::string command_name(Command c);

/// Usage or configuration problem; maps to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// --help was given; the message is the usage text.
class HelpRequested : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Thresholds each command grades its residuals against.
struct Tolerances {
  double identity = 1e-12;       // commutator identities
  double residual = 1e-10;       // eigenpair residuals, polar deviations
  double eigenbasis = 1e-12;     // ‖D b_k - k b_k‖
  double wedge = 1e-10;          // wedge relations of a single symbol
  double stabilization = 1e-6;   // relative change of the last sweep step
  double divergence = 0.02;      // relative distance of the doubling increment to 2 ln 2
};

struct RunConfig {
  Command command = Command::spectrum;
  int n = 256;
  std::vector<int> sizes = {64, 128, 256, 512};
  bool sizes_given = false;
  std::optional<double> epsilon;
  std::int64_t K = 100000;
  std::string symbol_spec = "cos4k:1";
  std::optional<int> margin;
  std::string sweep_target = "dirac";  // dirac | delta | delta_dz
  int order = 1;
  std::filesystem::path output_dir = ".";
  bool emit_svg = false;
  Tolerances tol;

  /// Throws ConfigError unless n >= 2, sizes strictly increasing, epsilon >= 0.
  void validate() const;
};

/// Environment variable consulted when --output-dir is not given.
inline constexpr const char* kOutputDirEnv = "TTORUS_OUTPUT_DIR";

/// Parses argv-style arguments (without the program name). Throws
/// ConfigError on bad usage.
RunConfig parse_args(const std::vector<std::string>& args);

/// "cos4k:k", "const:c", or a file with one sample per line ("re" or
/// "re im" or "re,im"; '#' starts a comment) and a power-of-two count.
FourierSeries load_symbol(const std::string& spec);

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Exit status for an exception escaping a command: usage errors map to 2,
/// everything else (non-convergence, unstable index, ...) to 3.
int exit_status_for(const std::exception& e);

/// Executes the command, writes report.json (always), data.csv and
/// plot.svg into output_dir, and returns the exit status.
int run(const RunConfig& config);

/// Full front end: parse, run, report usage errors on stderr.
int main_entry(int argc, char** argv);

}  // namespace ttorus::cli
