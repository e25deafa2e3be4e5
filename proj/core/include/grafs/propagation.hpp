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

#include <vector>

#include "grafs/operator.hpp"

namespace grafs {

/// Eigensystem of one step generator, kept so the derivative of the step
/// exponential can reuse it. h = vectors * diag(values) * vectors^dagger.
struct StepEigensystem {
  RealVector values;
  Operator vectors;
  double dt = 0.0;
};

struct StepPropagator {
  Operator unitary;  // exp(-i dt h)
  StepEigensystem eigensystem;
};

/// exp(-i dt h) by Hermitian eigendecomposition. Units with hbar = 1.
StepPropagator step_propagator(const Operator& h, double dt);

/// Piecewise-constant propagation of a pulse with every intermediate product
/// retained:
///   step(l)     = U(t_l),                 l = 1..N
///   forward(l)  = U(t_l) ... U(t_1),      forward(0)  = 1
///   backward(l) = U(t_N) ... U(t_{l+1}),  backward(N) = 1
/// so that dU_tau / dOmega_j(t_l) = backward(l) dU(t_l) forward(l-1).
class PropagatorCache {
 public:
  PropagatorCache(const ControlSystem& sys, const ControlPulse& pulse);

  [[nodiscard]] std::size_t n_steps() const { return steps_.size(); }
  [[nodiscard]] Eigen::Index dim() const { return forward_.front().rows(); }
  [[nodiscard]] double dt() const { return dt_; }

  [[nodiscard]] const StepPropagator& step(std::size_t l) const {
    return steps_[l - 1];
  }
  [[nodiscard]] const Operator& forward(std::size_t l) const {
    return forward_[l];
  }
  [[nodiscard]] const Operator& backward(std::size_t l) const {
    return backward_[l];
  }
  [[nodiscard]] const Operator& total() const { return forward_.back(); }

 private:
  double dt_;
  std::vector<StepPropagator> steps_;
  std::vector<Operator> forward_;
  std::vector<Operator> backward_;
};

/// U(t_N) ... U(t_1) for the pulse; the latest step is the leftmost factor.
Operator total_propagator(const ControlSystem& sys, const ControlPulse& pulse);

/// tr(U_targ^dagger U_final).
Complex trace_fidelity(const Operator& u_targ, const Operator& u_final);

/// |tr(U_targ^dagger U_final)| / d, in [0, 1] for unitary arguments.
double phase_invariant_fidelity(const Operator& u_targ,
                                const Operator& u_final);

}  // namespace grafs
