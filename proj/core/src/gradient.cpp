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

#include "grafs/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grafs/errors.hpp"

namespace grafs {
namespace {

// Divided differences of f(x) = exp(-i dt x) over the spectrum:
//   G_nm = (f(l_n) - f(l_m)) / (l_n - l_m),   G_nn = f'(l_n).
// Written as -i dt e^{-i dt (l_n + l_m)/2} sinc(dt (l_n - l_m) / 2), which is
// the same quantity without the cancellation of the plain quotient.
Operator divided_differences(const StepEigensystem& eig) {
  const auto d = eig.values.size();
  const double dt = eig.dt;
  Operator g(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) {
      const double ln = eig.values[n];
      const double lm = eig.values[m];
      const double gap = ln - lm;
      if (std::abs(gap) < kDegeneracyTolerance * std::max(1.0, std::abs(ln))) {
        g(n, m) = -kI * dt * std::exp(-kI * dt * ln);
      } else {
        const double x = 0.5 * dt * gap;
        g(n, m) = -kI * dt * std::exp(-kI * dt * 0.5 * (ln + lm)) *
                  (std::sin(x) / x);
      }
    }
  }
  return g;
}

void check_target(const ControlSystem& sys, const Operator& u_targ) {
  if (u_targ.rows() != sys.dim() || u_targ.cols() != sys.dim()) {
    throw InvalidArgument("target dimension does not match the system");
  }
}

void check_basis(const RealMatrix& basis, std::size_t n_steps) {
  if (static_cast<std::size_t>(basis.rows()) != n_steps) {
    throw InvalidArgument("basis has " + std::to_string(basis.rows()) +
                          " rows, expected one per time step (" +
                          std::to_string(n_steps) + ")");
  }
}

double phase_of(Complex trace) {
  return trace == Complex{} ? 0.0 : std::arg(trace);
}

}  // namespace

Operator exp_derivative(const StepEigensystem& eig, const Operator& b) {
  if (b.rows() != eig.vectors.rows() || b.cols() != eig.vectors.cols()) {
    throw InvalidArgument("exp_derivative: direction has the wrong dimension");
  }
  const Operator& v = eig.vectors;
  const Operator b_eig = v.adjoint() * b * v;
  return v * divided_differences(eig).cwiseProduct(b_eig) * v.adjoint();
}

OperatorTensor::OperatorTensor(std::size_t rows, std::size_t controls,
                               Eigen::Index dim)
    : rows_(rows),
      controls_(controls),
      dim_(dim),
      data_(rows * controls, Operator::Zero(dim, dim)) {}

OperatorTensor grape_propagator_gradient(const ControlSystem& sys,
                                         const PropagatorCache& cache) {
  const std::size_t n = cache.n_steps();
  const std::size_t m = sys.num_controls();
  OperatorTensor out(n, m, sys.dim());
  for (std::size_t l = 1; l <= n; ++l) {
    const auto& eig = cache.step(l).eigensystem;
    for (std::size_t j = 0; j < m; ++j) {
      out.at(l - 1, j) = cache.backward(l) *
                         exp_derivative(eig, sys.control(j)) *
                         cache.forward(l - 1);
    }
  }
  return out;
}

RealMatrix fidelity_gradient(const OperatorTensor& du, const Operator& u_targ,
                             Complex trace) {
  const Complex rotate = std::exp(-kI * phase_of(trace));
  const double inv_d = 1.0 / static_cast<double>(u_targ.rows());
  RealMatrix out(du.rows(), du.controls());
  for (std::size_t i = 0; i < du.rows(); ++i) {
    for (std::size_t j = 0; j < du.controls(); ++j) {
      const Complex tr = trace_fidelity(u_targ, du.at(i, j));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          inv_d * (rotate * tr).real();
    }
  }
  return out;
}

FidelityGradient grape_gradient(const ControlSystem& sys,
                                const ControlPulse& pulse,
                                const Operator& u_targ) {
  check_target(sys, u_targ);
  const PropagatorCache cache(sys, pulse);
  const std::size_t n = cache.n_steps();
  const std::size_t m = sys.num_controls();

  FidelityGradient out;
  out.trace = trace_fidelity(u_targ, cache.total());
  out.phase = phase_of(out.trace);
  out.fidelity = std::abs(out.trace) / static_cast<double>(sys.dim());
  out.grape.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));

  const Complex rotate = std::exp(-kI * out.phase);
  const double inv_d = 1.0 / static_cast<double>(sys.dim());
  const Operator targ_adj = u_targ.adjoint();

  // tr(U_targ^dag B_l dU F_{l-1}) = tr(G_l dU) with G_l = F_{l-1} U_targ^dag B_l,
  // and in the step eigenbasis tr(G dU) = sum_nm G'_mn Gamma_nm H'_nm.
  for (std::size_t l = 1; l <= n; ++l) {
    const auto& eig = cache.step(l).eigensystem;
    const Operator& v = eig.vectors;
    const Operator g =
        v.adjoint() * (cache.forward(l - 1) * targ_adj * cache.backward(l)) * v;
    const Operator weights = g.transpose().cwiseProduct(divided_differences(eig));
    for (std::size_t j = 0; j < m; ++j) {
      const Operator h_eig = v.adjoint() * sys.control(j) * v;
      const Complex tr = weights.cwiseProduct(h_eig).sum();
      out.grape(static_cast<Eigen::Index>(l - 1), static_cast<Eigen::Index>(j)) =
          inv_d * (rotate * tr).real();
    }
  }
  if (!out.grape.allFinite() || !std::isfinite(out.fidelity)) {
    throw NumericalError("grape_gradient: non-finite fidelity or gradient");
  }
  return out;
}

FullGradient full_gradient(const ControlSystem& sys, const ControlPulse& pulse,
                           const Operator& u_targ, const RealMatrix& basis) {
  check_target(sys, u_targ);
  check_basis(basis, pulse.n_steps());
  const PropagatorCache cache(sys, pulse);
  FullGradient out;
  out.propagator.grape = grape_propagator_gradient(sys, cache);
  out.propagator.grafs = grafs_gradient(out.propagator.grape, basis);
  auto& fid = out.fidelity;
  fid.trace = trace_fidelity(u_targ, cache.total());
  fid.phase = phase_of(fid.trace);
  fid.fidelity = std::abs(fid.trace) / static_cast<double>(sys.dim());
  fid.grape = fidelity_gradient(out.propagator.grape, u_targ, fid.trace);
  fid.grafs = grafs_gradient(fid.grape, basis);
  return out;
}

OperatorTensor grafs_gradient(const OperatorTensor& grape,
                              const RealMatrix& basis) {
  check_basis(basis, grape.rows());
  const auto k_count = static_cast<std::size_t>(basis.cols());
  OperatorTensor out(k_count, grape.controls(), grape.dim());
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t j = 0; j < grape.controls(); ++j) {
      Operator& acc = out.at(k, j);
      for (std::size_t l = 0; l < grape.rows(); ++l) {
        acc += basis(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) *
               grape.at(l, j);
      }
    }
  }
  return out;
}

RealMatrix grafs_gradient(const RealMatrix& grape, const RealMatrix& basis) {
  check_basis(basis, static_cast<std::size_t>(grape.rows()));
  RealMatrix out = RealMatrix::Zero(basis.cols(), grape.cols());
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    for (Eigen::Index j = 0; j < grape.cols(); ++j) {
      double acc = 0.0;
      for (Eigen::Index l = 0; l < grape.rows(); ++l) {
        acc += basis(l, k) * grape(l, j);
      }
      out(k, j) = acc;
    }
  }
  return out;
}

OperatorTensor grafs_propagator_gradient_direct(const ControlSystem& sys,
                                                const RealMatrix& basis,
                                                const RealMatrix& coeffs,
                                                const PulseGrid& grid) {
  check_basis(basis, grid.n_steps());
  if (coeffs.rows() != basis.cols() ||
      static_cast<std::size_t>(coeffs.cols()) != sys.num_controls()) {
    throw InvalidArgument("coefficient matrix must be K x M");
  }
  const ControlPulse pulse(basis * coeffs, grid);
  const PropagatorCache cache(sys, pulse);
  const auto k_count = static_cast<std::size_t>(basis.cols());
  const std::size_t m = sys.num_controls();
  OperatorTensor out(k_count, m, sys.dim());
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      Operator& acc = out.at(k, j);
      for (std::size_t l = 1; l <= grid.n_steps(); ++l) {
        const double v = basis(static_cast<Eigen::Index>(l - 1),
                               static_cast<Eigen::Index>(k));
        const Operator dstep =
            exp_derivative(cache.step(l).eigensystem, v * sys.control(j));
        acc += cache.backward(l) * dstep * cache.forward(l - 1);
      }
    }
  }
  return out;
}

RealMatrix grafs_gradient_direct(const ControlSystem& sys,
                                 const RealMatrix& basis,
                                 const RealMatrix& coeffs,
                                 const PulseGrid& grid, const Operator& u_targ) {
  check_target(sys, u_targ);
  const OperatorTensor du =
      grafs_propagator_gradient_direct(sys, basis, coeffs, grid);
  const Operator u = total_propagator(sys, ControlPulse(basis * coeffs, grid));
  return fidelity_gradient(du, u_targ, trace_fidelity(u_targ, u));
}

}  // namespace grafs

namespace grafs {

double gradient_rel_error(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / scale;
}

GradientCheckReport finite_difference_check(const ControlSystem& sys,
                                            const Operator& u_targ,
                                            std::size_t n, double tau,
                                            double amplitude, int samples,
                                            double tolerance,
                                            RandomStream& rng) {
  if (samples < 1) throw InvalidArgument("gradient check needs >= 1 sample");
  if (!(amplitude > 0.0)) throw InvalidArgument("amplitude must be positive");
  check_target(sys, u_targ);
  const PulseGrid grid = PulseGrid::from_duration(n, tau);
  const auto m = static_cast<Eigen::Index>(sys.num_controls());
  const auto rows = static_cast<Eigen::Index>(n);

  GradientCheckReport report;
  report.tolerance = tolerance;
  for (int s = 0; s < samples; ++s) {
    RealMatrix values(rows, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index l = 0; l < rows; ++l) {
        values(l, j) = rng.uniform(-amplitude, amplitude);
      }
    }
    const auto l = static_cast<Eigen::Index>(rng.next_u64() % n);
    const auto j = static_cast<Eigen::Index>(rng.next_u64() % sys.num_controls());

    const FidelityGradient g =
        grape_gradient(sys, ControlPulse(values, grid), u_targ);
    auto phi_at = [&](double shift) {
      RealMatrix v = values;
      v(l, j) += shift;
      return phase_invariant_fidelity(
          u_targ, total_propagator(sys, ControlPulse(std::move(v), grid)));
    };

    GradientCheckSample best;
    best.step = static_cast<std::size_t>(l) + 1;
    best.control = static_cast<std::size_t>(j);
    best.analytic = g.grape(l, j);
    best.rel_error = std::numeric_limits<double>::infinity();
    for (const double h : {1e-5, 1e-6, 1e-7}) {
      const double fd = (phi_at(h) - phi_at(-h)) / (2.0 * h);
      const double err = gradient_rel_error(best.analytic, fd);
      if (err < best.rel_error) {
        best.rel_error = err;
        best.numeric = fd;
        best.h = h;
      }
    }
    report.worst_rel_error = std::max(report.worst_rel_error, best.rel_error);
    report.samples.push_back(best);
  }
  return report;
}

}  // namespace grafs
