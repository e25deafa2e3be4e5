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

#include "grafs/propagation.hpp"

#include <cmath>

#include "grafs/errors.hpp"

namespace grafs {

StepPropagator step_propagator(const Operator& h, double dt) {
  require_hermitian(h, "step generator");
  // The solver reads only the lower triangle; symmetrize so that roundoff in
  // the upper triangle cannot leak into the result.
  const Operator hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(hs);
  if (es.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver failed on a step generator");
  }
  StepPropagator out;
  out.eigensystem.values = es.eigenvalues();
  out.eigensystem.vectors = es.eigenvectors();
  out.eigensystem.dt = dt;
  const auto& v = out.eigensystem.vectors;
  Eigen::VectorXcd phases(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    phases[k] = std::exp(-kI * dt * out.eigensystem.values[k]);
  }
  out.unitary = v * phases.asDiagonal() * v.adjoint();
  return out;
}

PropagatorCache::PropagatorCache(const ControlSystem& sys,
                                 const ControlPulse& pulse)
    : dt_(pulse.grid().dt()) {
  if (pulse.num_controls() != sys.num_controls()) {
    throw InvalidArgument("pulse has " + std::to_string(pulse.num_controls()) +
                          " controls, system has " +
                          std::to_string(sys.num_controls()));
  }
  const std::size_t n = pulse.n_steps();
  const auto d = sys.dim();
  steps_.reserve(n);
  forward_.reserve(n + 1);
  forward_.push_back(identity(d));
  for (std::size_t l = 1; l <= n; ++l) {
    const RealVector amps = pulse.values().row(static_cast<Eigen::Index>(l - 1));
    steps_.push_back(step_propagator(sys.hamiltonian(amps), dt_));
    forward_.push_back(steps_.back().unitary * forward_.back());
  }
  backward_.assign(n + 1, Operator());
  backward_[n] = identity(d);
  for (std::size_t l = n; l >= 1; --l) {
    backward_[l - 1] = backward_[l] * steps_[l - 1].unitary;
  }
}

Operator total_propagator(const ControlSystem& sys, const ControlPulse& pulse) {
  if (pulse.num_controls() != sys.num_controls()) {
    throw InvalidArgument("pulse/system control count mismatch");
  }
  Operator u = identity(sys.dim());
  const double dt = pulse.grid().dt();
  for (Eigen::Index l = 0; l < pulse.values().rows(); ++l) {
    const RealVector amps = pulse.values().row(l);
    u = step_propagator(sys.hamiltonian(amps), dt).unitary * u;
  }
  return u;
}

Complex trace_fidelity(const Operator& u_targ, const Operator& u_final) {
  if (u_targ.rows() != u_final.rows() || u_targ.cols() != u_final.cols()) {
    throw InvalidArgument("trace fidelity: dimension mismatch");
  }
  // tr(A^dagger B) = sum_ij conj(A_ij) B_ij
  return u_targ.conjugate().cwiseProduct(u_final).sum();
}

double phase_invariant_fidelity(const Operator& u_targ,
                                const Operator& u_final) {
  return std::abs(trace_fidelity(u_targ, u_final)) /
         static_cast<double>(u_targ.rows());
}

}  // namespace grafs
