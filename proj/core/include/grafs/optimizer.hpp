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
#include <string_view>
#include <vector>

#include "grafs/errors.hpp"
#include "grafs/operator.hpp"
#include "grafs/rng.hpp"

namespace grafs {

/// Everything needed to evaluate Phi(A): Omega = basis * A on `grid`.
struct GrafsProblem {
  ControlSystem system;
  RealMatrix basis;  // N x K
  PulseGrid grid;
  Operator target;

  [[nodiscard]] Eigen::Index basis_size() const { return basis.cols(); }
  [[nodiscard]] std::size_t num_controls() const {
    return system.num_controls();
  }
  void validate() const;
};

/// K x M coefficients with an optional box |alpha_kj| <= bound (0 = none).
class CoefficientMatrix {
 public:
  CoefficientMatrix(RealMatrix values, double bound);

  static CoefficientMatrix zeros(Eigen::Index k, Eigen::Index m, double bound);
  /// Uniform in [-spread, spread], clipped to the bound.
  static CoefficientMatrix uniform(Eigen::Index k, Eigen::Index m, double bound,
                                   double spread, RandomStream& rng);

  [[nodiscard]] const RealMatrix& values() const { return values_; }
  [[nodiscard]] double bound() const { return bound_; }
  [[nodiscard]] bool bounded() const { return bound_ > 0.0; }

 private:
  RealMatrix values_;
  double bound_;
};

enum class SearchDirection { QuasiNewton, SteepestAscent };

struct OptimizerConfig {
  int max_iters = 200;
  double grad_tol = 1e-9;     // on the projected gradient, infinity norm
  double fid_target = 2.0;    // stop once Phi >= fid_target; > 1 disables
  double coeff_bound = 0.0;   // alpha_max, 0 = unbounded
  double initial_step = 1.0;
  double shrink = 0.5;
  double sufficient_increase = 1e-4;
  int max_backtracks = 40;
  int memory = 10;
  SearchDirection direction = SearchDirection::QuasiNewton;
  std::uint64_t seed = 0;

  void validate() const;
};

struct IterationRecord {
  int iter = 0;
  double fidelity = 0.0;
  double trace_abs = 0.0;
  double phase = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;  // accepted epsilon; 0 on iteration 0
  double wall_seconds = 0.0;
  bool has_snapshot = false;
  RealMatrix coeffs;
};

struct OptimizationTrace {
  std::vector<IterationRecord> records;
};

enum class Termination {
  GradientTolerance,
  FidelityTarget,
  MaxIterations,
  LineSearchFailure,
};

std::string_view to_string(Termination t);

struct AscentResult {
  RealMatrix coeffs;
  double fidelity = 0.0;
  Termination reason = Termination::MaxIterations;
  int iterations = 0;
  int evaluations = 0;
  OptimizationTrace trace;
};

/// Thrown when Phi or its gradient turns non-finite. Carries the last iterate.
class AscentAborted : public NumericalError {
 public:
  AscentAborted(const std::string& what, RealMatrix last_coeffs)
      : NumericalError(what), coeffs_(std::move(last_coeffs)) {}
  [[nodiscard]] const RealMatrix& coeffs() const { return coeffs_; }

 private:
  RealMatrix coeffs_;
};

/// Phi(A) and dPhi/dA for a problem.
struct Evaluation {
  double fidelity = 0.0;
  Complex trace{};
  double phase = 0.0;
  RealMatrix gradient;  // K x M
};
Evaluation evaluate(const GrafsProblem& problem, const RealMatrix& coeffs);

/// Bound-constrained gradient ascent on the coefficients. Iterates are
/// A <- clip(A + eps D) with D a limited-memory quasi-Newton direction on the
/// free variables (or the projected gradient) and eps from Armijo
/// backtracking, so Phi never decreases between accepted iterates.
AscentResult ascend(const GrafsProblem& problem, const OptimizerConfig& cfg,
                    const CoefficientMatrix& a0);

}  // namespace grafs
