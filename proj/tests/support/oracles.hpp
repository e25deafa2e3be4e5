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

// Reference computations for the tests. None of them call into the library's
// numerical paths: exponentials come from a Taylor series, time evolution from
// an adaptive ODE solver, local invariants from the Makhlin formulas.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "grafs/operator.hpp"
#include "grafs/rng.hpp"

namespace grafs::oracle {

// exp(a) by scaling and squaring around a truncated Taylor series.
inline Operator taylor_expm(const Operator& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) > 0.25) ++squarings;
  const Operator x = a / std::ldexp(1.0, squarings);
  Operator term = Operator::Identity(a.rows(), a.cols());
  Operator sum = term;
  for (int k = 1; k < 40; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
    if (term.norm() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline Operator step_exp(const Operator& h, double dt) {
  return taylor_expm(Complex(0.0, -dt) * h);
}

inline Operator random_hermitian(Eigen::Index d, RandomStream& rng,
                                 double scale = 1.0) {
  Operator a(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) a(i, j) = {rng.normal(), rng.normal()};
  }
  return scale * 0.5 * (a + a.adjoint());
}

inline ControlSystem random_system(Eigen::Index d, int controls,
                                   RandomStream& rng) {
  std::vector<Operator> hs;
  for (int j = 0; j < controls; ++j) hs.push_back(random_hermitian(d, rng));
  return {random_hermitian(d, rng), std::move(hs)};
}

// Time-ordered exponential of -i H(t) on [0, tau] with an adaptive
// Dormand-Prince integrator. amplitudes(t) gives the control vector; the
// integration is restarted at every breakpoint so that piecewise-constant
// controls are handled exactly.
inline Operator ode_propagator(
    const ControlSystem& sys,
    const std::function<RealVector(double)>& amplitudes,
    const std::vector<double>& breakpoints, double tol = 1e-12) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<Complex>;
  const Eigen::Index d = sys.dim();
  State u(static_cast<std::size_t>(d * d), Complex(0.0));
  for (Eigen::Index i = 0; i < d; ++i) u[static_cast<std::size_t>(i * d + i)] = 1.0;

  for (std::size_t seg = 0; seg + 1 < breakpoints.size(); ++seg) {
    const double t0 = breakpoints[seg];
    const double t1 = breakpoints[seg + 1];
    auto rhs = [&](const State& x, State& dxdt, double t) {
      const Operator h = sys.hamiltonian(amplitudes(std::clamp(t, t0, t1)));
      Eigen::Map<const Operator> xm(x.data(), d, d);
      Eigen::Map<Operator> dm(dxdt.data(), d, d);
      dm.noalias() = Complex(0.0, -1.0) * h * xm;
    };
    odeint::integrate_adaptive(
        odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(tol, tol),
        rhs, u, t0, t1, (t1 - t0) / 16.0);
  }
  return Eigen::Map<const Operator>(u.data(), d, d);
}

// Piecewise-constant pulse, integrated step by step.
inline Operator ode_propagator(const ControlSystem& sys,
                               const ControlPulse& pulse, double tol = 1e-12) {
  const double dt = pulse.grid().dt();
  Operator u = Operator::Identity(sys.dim(), sys.dim());
  for (Eigen::Index l = 0; l < pulse.values().rows(); ++l) {
    const RealVector a = pulse.values().row(l).transpose();
    u = ode_propagator(sys, [&](double) { return a; }, {0.0, dt}, tol) * u;
  }
  return u;
}

// Magic (Bell) basis used for the Makhlin invariants.
inline Operator magic_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  Operator q(4, 4);
  q << 1, 0, 0, i,
       0, i, 1, 0,
       0, i, -1.0, 0,
       1, 0, 0, -i;
  return s * q;
}

struct Makhlin {
  Complex g1;
  double g2;
};

inline Makhlin makhlin_invariants(const Operator& u) {
  const Operator q = magic_basis();
  const Operator ub = q.adjoint() * u * q;
  const Operator m = ub.transpose() * ub;
  const Complex det = u.determinant();
  const Complex tr = m.trace();
  const Complex tr2 = (m * m).trace();
  return {tr * tr / (16.0 * det), ((tr * tr - tr2) / (4.0 * det)).real()};
}

// Largest concurrence U can create from a product state, maximised over the
// Bloch angles of both qubits. A gate is a perfect entangler exactly when
// this reaches 1.
inline double max_product_concurrence(const Operator& u) {
  auto qubit = [](double th, double ph) {
    Eigen::Vector2cd v;
    v << std::cos(th / 2), std::polar(std::sin(th / 2), ph);
    return v;
  };
  Operator yy = Operator::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  auto conc = [&](const std::array<double, 4>& p) {
    Eigen::Vector4cd in;
    const auto a = qubit(p[0], p[1]);
    const auto b = qubit(p[2], p[3]);
    in << a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1];
    const Eigen::Vector4cd out = u * in;
    return std::abs((out.transpose() * yy * out)(0, 0));
  };
  constexpr int kGrid = 14;
  constexpr double kPi = 3.14159265358979323846;
  std::array<double, 4> best{};
  double best_c = -1.0;
  for (int i0 = 0; i0 < kGrid; ++i0)
    for (int i1 = 0; i1 < kGrid; ++i1)
      for (int i2 = 0; i2 < kGrid; ++i2)
        for (int i3 = 0; i3 < kGrid; ++i3) {
          const std::array<double, 4> p{kPi * (i0 + 0.5) / kGrid,
                                        2 * kPi * i1 / kGrid,
                                        kPi * (i2 + 0.5) / kGrid,
                                        2 * kPi * i3 / kGrid};
          const double c = conc(p);
          if (c > best_c) best_c = c, best = p;
        }
  // Pattern search refinement.
  for (double step = 0.2; step > 1e-9; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int k = 0; k < 4; ++k) {
        for (double sgn : {1.0, -1.0}) {
          auto p = best;
          p[k] += sgn * step;
          const double c = conc(p);
          if (c > best_c + 1e-15) best_c = c, best = p, moved = true;
        }
      }
    }
  }
  return best_c;
}

// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
inline double ks_statistic(std::vector<double> xs,
                           const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f,
                  f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace grafs::oracle
