// Copyright 2026 The GRAFS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "grafs/qsl.hpp"
#include "grafs/slepian.hpp"
#include "grafs/synthesis.hpp"

namespace grafs::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericalFailure = 3,
  kPartialSweep = 4,
};

enum class Command { Slepian, Synthesize, GradCheck, QslSweep };
std::string_view to_string(Command c);

struct SlepianParams {
  int n = 0;
  double w = 0.0;
  int k_max = 0;  // 0 means round(2NW)
  bool filter = false;
  double endpoint_threshold = kDefaultEndpointThreshold;
};

struct GradCheckParams {
  std::string system = "toffoli";
  int n = 32;
  double tau = 4.0;
  double amplitude = 1.0;
  int samples = 100;
  double tolerance = 1e-5;
};

struct QslSweepParams {
  std::string system = "two-qubit";
  int targets = 10;
  std::vector<double> w_grid{0.05, 0.1, 0.2};
  std::vector<double> f_stars{0.9, 0.9999};
  BracketConfig bracket;
};

struct RunConfig {
  Command command = Command::Slepian;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  int workers = 1;

  SlepianParams slepian;
  SynthesisSpec synthesize;  // optimizer.seed mirrors `seed`
  GradCheckParams grad_check;
  QslSweepParams qsl_sweep;

  /// TOML text that parses back to this config (`grafs --config <file>`).
  [[nodiscard]] std::string resolved() const;
  [[nodiscard]] std::uint64_t hash() const;
};

/// Parse failure or invalid value. exit_code is 0 for --help/--version.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int exit_code)
      : std::runtime_error(what), exit_code_(exit_code) {}
  [[nodiscard]] int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

/// Flags override the --config file, which overrides any --preset, which
/// overrides built-in defaults. The output directory falls back to
/// $GRAFS_OUT_DIR, then "grafs-out".
RunConfig parse_config(const std::vector<std::string>& args);

/// Runs a parsed config and writes its artifacts. Returns an ExitCode.
int run(const RunConfig& cfg);

/// parse_config + run with errors mapped to exit codes.
int main_entry(int argc, char** argv);

}  // namespace grafs::cli
