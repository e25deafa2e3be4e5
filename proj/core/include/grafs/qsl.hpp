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
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "grafs/operator.hpp"
#include "grafs/slepian.hpp"

namespace grafs {

// Minimal gate time versus control bandwidth.
//
// Durations are in units of the inverse drift coupling. The bandwidth is held
// fixed in physical units across a bracket: a candidate duration tau uses the
// per-sample half bandwidth
//   W_eff(tau) = w_nominal * tau / tau_ref,
// so W_eff / dt = w_nominal * N / tau_ref for every tau. With the default
// tau_ref = N, w_nominal is the half bandwidth in units of the coupling.

inline constexpr double kGoldenRatio = std::numbers::phi;

/// Time-bandwidth lower bound delta / (2 sqrt(N) W) for unit coefficient and
/// control norms.
double qsl_bound(double delta, int n, double w);

/// The accuracy measure used with qsl_bound for a fidelity threshold.
inline double qsl_delta(double f_star) { return 1.0 - f_star; }

/// tau_lo < tau_mid < tau_hi with (hi - mid) / (mid - lo) = golden ratio.
class BracketState {
 public:
  BracketState(double lo, double hi);

  [[nodiscard]] double lo() const { return lo_; }
  [[nodiscard]] double mid() const { return mid_; }
  [[nodiscard]] double hi() const { return hi_; }
  [[nodiscard]] double width() const { return hi_ - lo_; }
  [[nodiscard]] double ratio() const { return (hi_ - mid_) / (mid_ - lo_); }

  /// Success at mid: the upper end moves down to it.
  void on_success();
  /// Failure at mid: the lower end moves up to it.
  void on_failure();

 private:
  void place_mid();
  double lo_, mid_, hi_;
};

enum class QslBasis { Slepian, Identity };

struct BracketConfig {
  int n = 200;
  QslBasis basis = QslBasis::Slepian;
  double tau_ref = 0.0;       // 0 means tau_ref = n
  double alpha_bound = 1.0;
  int max_iters = 300;
  int restarts = 3;
  double init_spread = 0.1;
  double grad_tol = 1e-9;
  double rel_tol = 0.02;
  double start_tau = 0.0;     // 0 means 10 / w_nominal
  int max_doublings = 12;
  double endpoint_threshold = kDefaultEndpointThreshold;

  void validate() const;
  [[nodiscard]] double reference_duration() const {
    return tau_ref > 0.0 ? tau_ref : static_cast<double>(n);
  }
};

/// Per-sample half bandwidth used at duration tau.
double effective_bandwidth(const BracketConfig& cfg, double w_nominal,
                           double tau);

/// The N x K basis used at duration tau.
RealMatrix qsl_basis(const BracketConfig& cfg, double w_nominal, double tau);

struct BracketStep {
  enum class Kind { Probe, Mid };
  Kind kind = Kind::Mid;
  double tau = 0.0;
  double w_effective = 0.0;
  int k = 0;
  double fidelity = 0.0;  // best over restarts
  bool success = false;
  int iterations = 0;
  int restarts_used = 0;
  bool reused = false;    // outcome taken from shared evidence
  double lo = 0.0, mid = 0.0, hi = 0.0;  // bracket after this step
};

/// Best fidelity seen at each duration, shared between brackets for the same
/// (target, W) so that stricter thresholds never redo work and never
/// contradict looser ones.
using Evidence = std::map<double, double>;

struct SweepRecord {
  std::string target_id;
  std::uint64_t seed = 0;
  double w = 0.0;
  int n = 0;
  double f_star = 0.0;
  double tau_min = 0.0;  // NaN unless status == "ok"
  int iterations = 0;
  std::string status;    // ok | bound-infeasible
  double tau_lo_initial = 0.0;
  std::vector<BracketStep> audit;
  /// Set when a stricter threshold in the same cell succeeded below the
  /// bracket's own result, which then bounds tau_min from above.
  bool tau_min_from_stricter = false;
};

/// Golden-ratio bracketing of the shortest duration at which some restart
/// reaches Phi >= f_star. Restart r starts from uniform coefficients drawn
/// from RandomStream(seed).split("init", r).
SweepRecord min_time_bracket(const ControlSystem& sys, const Operator& target,
                             double w_nominal, double f_star,
                             const BracketConfig& cfg, std::uint64_t seed,
                             Evidence* evidence = nullptr);

/// Candidate durations implied by an audit trail, for replay checks.
std::vector<double> replay_bracket(const SweepRecord& record);

struct SweepTarget {
  std::string id;
  std::uint64_t seed = 0;
  Operator unitary;
};

/// count perfect-entangler targets "pe-random:<s_i>" with s_i derived from
/// root_seed.
std::vector<SweepTarget> perfect_entangler_targets(int count,
                                                   std::uint64_t root_seed);

struct SweepConfig {
  std::vector<SweepTarget> targets;
  std::vector<double> w_grid;
  std::vector<double> f_stars;
  BracketConfig bracket;
  std::uint64_t seed = 0;
  int workers = 1;
};

/// Full factorial over (target, W, F*) on `sys`. Each (target, W) cell runs
/// its thresholds from strictest to loosest with shared evidence. Results are
/// ordered by (target, W, F*) whatever the worker count; on_record is called
/// under a lock as each record completes.
std::vector<SweepRecord> sweep(
    const ControlSystem& sys, const SweepConfig& cfg,
    const std::function<void(const SweepRecord&)>& on_record = {});

struct FitPoint {
  double w = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
  int count = 0;
};

struct FitResult {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;  // RMS misfit of the per-W means
  std::vector<FitPoint> points;
};

/// Unweighted least-squares fit of mean tau(W) to a / W + b.
FitResult fit_inverse_bandwidth(const std::vector<double>& w,
                                const std::vector<double>& tau);

/// One fit per F* over the records with status "ok".
std::map<double, FitResult> fit_sweep(const std::vector<SweepRecord>& records);

}  // namespace grafs
