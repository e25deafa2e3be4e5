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

#include <string>
#include <string_view>

#include "grafs/optimizer.hpp"
#include "grafs/slepian.hpp"

namespace grafs {

/// How many Slepian sequences enter the basis.
///
///   "full"          every sequence of the first round(2NW) that survives the
///                   endpoint filter
///   "fraction:<f>"  the first ceil(f * 2NW) of those
///   "count:<k>"     the first k of those
struct KPolicy {
  enum class Kind { Full, Fraction, Count };
  Kind kind = Kind::Full;
  double value = 1.0;

  static KPolicy parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;
  /// Number of columns to keep given 2NW and the filtered count.
  [[nodiscard]] int resolve(int effective_dim, int filtered) const;

  bool operator==(const KPolicy&) const = default;
};

enum class InitPolicy { Zero, Uniform };
std::string_view to_string(InitPolicy p);
InitPolicy parse_init_policy(std::string_view text);

struct SynthesisSpec {
  std::string system = "toffoli";
  std::string target = "toffoli";
  int n = 1000;
  double w = 0.02;
  double tau = 0.0;
  KPolicy k_policy;
  double endpoint_threshold = kDefaultEndpointThreshold;
  InitPolicy init = InitPolicy::Zero;
  double init_spread = 0.1;
  OptimizerConfig optimizer;  // coeff_bound is alpha_bound

  void validate() const;
};

/// Duration used by the Toffoli presets, frozen from a coarse scan.
inline constexpr double kToffoliTau = 27.0;

/// Named presets: "toffoli-w0.02", "toffoli-smoke", "toffoli-w0.4".
SynthesisSpec synthesis_preset(std::string_view name);

/// The filtered basis a spec asks for.
SlepianBasis build_basis(const SynthesisSpec& spec);

struct SynthesisResult {
  SlepianBasis basis;
  PulseGrid grid;
  AscentResult ascent;
  RealMatrix pulse;  // N x M, Omega = V A
  Operator target;
  Operator final_unitary;
};

SynthesisResult synthesize(const SynthesisSpec& spec);

}  // namespace grafs
