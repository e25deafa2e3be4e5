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

#include <cstddef>
#include <vector>

#include "grafs/operator.hpp"
#include "grafs/propagation.hpp"
#include "grafs/rng.hpp"

namespace grafs {

/// Relative eigenvalue gap below which two levels are treated as degenerate
/// in exp_derivative.
inline constexpr double kDegeneracyTolerance = 1e-9;

/// d/ds exp(-i dt (A + s B)) at the point whose eigensystem is `eig`.
///
/// In the eigenbasis of A + sB the derivative has elements
///   <nu|B|mu> (e^{-i dt l_nu} - e^{-i dt l_mu}) / (l_nu - l_mu)
/// for distinct levels, and the limit -i dt <nu|B|nu> e^{-i dt l_nu} for
/// degenerate ones.
Operator exp_derivative(const StepEigensystem& eig, const Operator& b);

/// Dense (index, control) array of d x d matrices, stored index-major:
/// entry (i, j) lives at i * controls + j.
class OperatorTensor {
 public:
  OperatorTensor() = default;
  OperatorTensor(std::size_t rows, std::size_t controls, Eigen::Index dim);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t controls() const { return controls_; }
  [[nodiscard]] Eigen::Index dim() const { return dim_; }

  Operator& at(std::size_t i, std::size_t j) {
    return data_[i * controls_ + j];
  }
  [[nodiscard]] const Operator& at(std::size_t i, std::size_t j) const {
    return data_[i * controls_ + j];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t controls_ = 0;
  Eigen::Index dim_ = 0;
  std::vector<Operator> data_;
};

/// dU_tau / dOmega_j(t_l) (grape, N x M) and dU_tau / dalpha_kj (grafs, K x M).
struct PropagatorGradient {
  OperatorTensor grape;
  OperatorTensor grafs;
};

/// dPhi / dOmega_j(t_l) (N x M) and dPhi / dalpha_kj (K x M) together with the
/// value they were evaluated at.
struct FidelityGradient {
  RealMatrix grape;
  RealMatrix grafs;
  Complex trace{};      // F = tr(U_targ^dagger U_tau)
  double phase = 0.0;   // arg(F); 0 when F = 0
  double fidelity = 0.0;
};

/// Full propagator-valued GRAPE gradient,
///   dU_tau / dOmega_j(t_l) = U_{N:l+1} dU(t_l)/dOmega_j U_{l-1:1}.
OperatorTensor grape_propagator_gradient(const ControlSystem& sys,
                                         const PropagatorCache& cache);

/// Chain rule from dU_tau to dPhi:
///   dPhi = (1/d) Re[e^{-i arg F} tr(U_targ^dagger dU_tau)].
RealMatrix fidelity_gradient(const OperatorTensor& du, const Operator& u_targ,
                             Complex trace);

/// Phi and its GRAPE gradient without materializing the d x d derivative of
/// every step. Agrees with fidelity_gradient(grape_propagator_gradient(...)).
FidelityGradient grape_gradient(const ControlSystem& sys,
                                const ControlPulse& pulse,
                                const Operator& u_targ);

/// Both propagator and fidelity gradients on the time grid, for tests and
/// diagnostics. `basis` (N x K) also fills the grafs halves.
struct FullGradient {
  PropagatorGradient propagator;
  FidelityGradient fidelity;
};
FullGradient full_gradient(const ControlSystem& sys, const ControlPulse& pulse,
                           const Operator& u_targ, const RealMatrix& basis);

/// Contraction over the time index, [grad_A]_kj = sum_l V_lk [grad_Omega]_lj.
/// The summation runs in increasing l so results do not depend on scheduling.
OperatorTensor grafs_gradient(const OperatorTensor& grape,
                              const RealMatrix& basis);
RealMatrix grafs_gradient(const RealMatrix& grape, const RealMatrix& basis);

/// Reference evaluation of dPhi / dalpha_kj straight from the product rule,
/// differentiating every step exponential with B = v_k(t_l) H_j. Costs
/// O(N K M) matrix products; meant as an oracle for grafs_gradient.
RealMatrix grafs_gradient_direct(const ControlSystem& sys,
                                 const RealMatrix& basis,
                                 const RealMatrix& coeffs,
                                 const PulseGrid& grid, const Operator& u_targ);

/// Same as above but returning the propagator-valued gradient.
OperatorTensor grafs_propagator_gradient_direct(const ControlSystem& sys,
                                                const RealMatrix& basis,
                                                const RealMatrix& coeffs,
                                                const PulseGrid& grid);

struct GradientCheckSample {
  std::size_t step = 0;     // 1-based time step
  std::size_t control = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double h = 0.0;           // difference step that gave the best agreement
  double rel_error = 0.0;
};

struct GradientCheckReport {
  std::vector<GradientCheckSample> samples;
  double worst_rel_error = 0.0;
  double tolerance = 0.0;
  [[nodiscard]] bool passed() const { return worst_rel_error < tolerance; }
};

/// Relative error used by the gradient checks, |a - f| / max(|a|, |f|, 1e-8).
double gradient_rel_error(double analytic, double numeric);

/// Draws `samples` (pulse, entry) pairs, each pulse uniform in
/// [-amplitude, amplitude] on n steps of total duration tau, and compares the
/// analytic dPhi/dOmega_j(t_l) with central differences of Phi at
/// h in {1e-5, 1e-6, 1e-7}, keeping the best h per entry.
GradientCheckReport finite_difference_check(const ControlSystem& sys,
                                            const Operator& u_targ,
                                            std::size_t n, double tau,
                                            double amplitude, int samples,
                                            double tolerance,
                                            RandomStream& rng);

}  // namespace grafs
