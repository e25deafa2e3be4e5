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

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "grafs/errors.hpp"
#include "grafs/models.hpp"
#include "grafs/operator.hpp"
#include "grafs/propagation.hpp"
#include "grafs/slepian.hpp"
#include "oracles.hpp"

namespace grafs {
namespace {

using std::numbers::pi;

double max_abs(const Operator& m) { return m.cwiseAbs().maxCoeff(); }

TEST(StepPropagator, ZeroGeneratorIsIdentity) {
  const auto p = step_propagator(Operator::Zero(2, 2), 1.0);
  EXPECT_LT(max_abs(p.unitary - identity(2)), 1e-15);
}

TEST(StepPropagator, PauliXQuarterTurn) {
  const auto p = step_propagator(pauli(PauliAxis::X), pi / 2);
  Operator expect(2, 2);
  expect << 0.0, -kI, -kI, 0.0;
  EXPECT_LT(max_abs(p.unitary - expect), 1e-15);
}

TEST(StepPropagator, MatchesTaylorSeries) {
  RandomStream rng(7);
  for (int d : {2, 4, 8}) {
    const Operator h = oracle::random_hermitian(d, rng);
    for (double dt : {0.1, 0.7, 2.5}) {
      const auto p = step_propagator(h, dt);
      EXPECT_LT(max_abs(p.unitary - oracle::step_exp(h, dt)), 1e-12)
          << "d=" << d << " dt=" << dt;
      EXPECT_LT(unitarity_error(p.unitary), 1e-12);
    }
  }
}

TEST(StepPropagator, EigensystemReconstructsGenerator) {
  RandomStream rng(8);
  const Operator h = oracle::random_hermitian(4, rng);
  const auto p = step_propagator(h, 0.3);
  const auto& e = p.eigensystem;
  const Operator back = e.vectors * e.values.cast<Complex>().asDiagonal() *
                        e.vectors.adjoint();
  EXPECT_LT(max_abs(back - h), 1e-12);
  EXPECT_DOUBLE_EQ(e.dt, 0.3);
}

TEST(StepPropagator, RejectsNonHermitian) {
  Operator h = Operator::Zero(2, 2);
  h(0, 1) = 1.0;
  try {
    (void)step_propagator(h, 1.0);
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(ControlSystem, Validation) {
  EXPECT_THROW(ControlSystem(identity(2), {}), InvalidArgument);
  EXPECT_THROW(ControlSystem(identity(2), {identity(4)}), InvalidArgument);
  Operator bad = Operator::Zero(2, 2);
  bad(1, 0) = kI;
  EXPECT_THROW(ControlSystem(identity(2), {bad}), InvalidArgument);
  const ControlSystem ok(Operator::Zero(2, 2), {pauli(PauliAxis::X)});
  EXPECT_EQ(ok.dim(), 2);
  EXPECT_EQ(ok.num_controls(), 1u);
  EXPECT_THROW((void)ok.hamiltonian(RealVector::Zero(2)), InvalidArgument);
}

TEST(PulseGrid, DerivedDuration) {
  const PulseGrid g = PulseGrid::from_duration(1000, 27.0);
  EXPECT_EQ(g.n_steps(), 1000u);
  EXPECT_DOUBLE_EQ(g.tau(), static_cast<double>(g.n_steps()) * g.dt());
  EXPECT_DOUBLE_EQ(g.time(1000), g.tau());
  EXPECT_THROW(PulseGrid(1, 0.1), InvalidArgument);
  EXPECT_THROW(PulseGrid(10, 0.0), InvalidArgument);
  EXPECT_THROW(PulseGrid(10, -1.0), InvalidArgument);
  EXPECT_THROW(PulseGrid(10, std::nan("")), InvalidArgument);
}

TEST(ControlPulse, RejectsNonFiniteAndShapeMismatch) {
  const PulseGrid g(4, 0.1);
  RealMatrix v = RealMatrix::Zero(4, 1);
  v(2, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(ControlPulse(v, g), InvalidArgument);
  EXPECT_THROW(ControlPulse(RealMatrix::Zero(3, 1), g), InvalidArgument);
}

TEST(TotalPropagator, ZeroPulseZeroDriftIsIdentity) {
  const ControlSystem sys(Operator::Zero(2, 2), {pauli(PauliAxis::X)});
  const ControlPulse pulse(RealMatrix::Zero(16, 1), PulseGrid(16, 0.2));
  EXPECT_LT(max_abs(total_propagator(sys, pulse) - identity(2)), 1e-15);
}

TEST(TotalPropagator, CommutingStepsIndependentOfN) {
  const ControlSystem sys(Operator::Zero(2, 2), {pauli(PauliAxis::X)});
  Operator expect(2, 2);
  expect << 0.0, -kI, -kI, 0.0;
  for (std::size_t n : {2u, 7u, 100u, 1000u}) {
    const double tau = 3.0;
    const ControlPulse pulse(RealMatrix::Constant(n, 1, pi / 2 / tau),
                             PulseGrid::from_duration(n, tau));
    EXPECT_LT(max_abs(total_propagator(sys, pulse) - expect), 1e-12)
        << "n=" << n;
  }
}

TEST(TotalPropagator, MatchesOdeIntegrationOnToffoliSystem) {
  const ControlSystem sys = toffoli_system();
  const SlepianBasis basis = endpoint_filter(generate_dpss(100, 0.2));
  RandomStream rng(11);
  RealMatrix a(basis.size(), 2);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.uniform(-1, 1);
  const RealMatrix omega = basis.matrix * a;
  // Keep dt * ||H|| <= 0.1.
  const double h_norm = 6.0 + 2.0 * omega.cwiseAbs().maxCoeff();
  const double dt = 0.1 / h_norm;
  const ControlPulse pulse(omega, PulseGrid(100, dt));
  const Operator u = total_propagator(sys, pulse);
  const Operator ref = oracle::ode_propagator(sys, pulse);
  EXPECT_LT(max_abs(u - ref), 1e-6);
  EXPECT_LT(max_abs(u - ref), 1e-9);  // the propagator is exact per step
}

TEST(TotalPropagator, OrderingLatestStepLeftmost) {
  const ControlSystem sys(Operator::Zero(2, 2),
                          {pauli(PauliAxis::X), pauli(PauliAxis::Z)});
  RealMatrix v(2, 2);
  v << 1.0, 0.0, 0.0, 1.0;
  const ControlPulse pulse(v, PulseGrid(2, 0.4));
  const Operator first = oracle::step_exp(pauli(PauliAxis::X), 0.4);
  const Operator second = oracle::step_exp(pauli(PauliAxis::Z), 0.4);
  EXPECT_LT(max_abs(total_propagator(sys, pulse) - second * first), 1e-14);
}

TEST(TotalPropagator, RejectsControlCountMismatch) {
  const ControlSystem sys = toffoli_system();
  const ControlPulse pulse(RealMatrix::Zero(4, 3), PulseGrid(4, 0.1));
  EXPECT_THROW((void)total_propagator(sys, pulse), InvalidArgument);
}

TEST(PropagatorCache, PartialProductsAreConsistent) {
  RandomStream rng(21);
  const ControlSystem sys = oracle::random_system(4, 2, rng);
  RealMatrix v(12, 2);
  for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = rng.normal();
  const ControlPulse pulse(v, PulseGrid(12, 0.05));
  const PropagatorCache cache(sys, pulse);
  for (std::size_t l = 0; l <= 12; ++l) {
    EXPECT_LT(max_abs(cache.backward(l) * cache.forward(l) - cache.total()),
              1e-13);
  }
  EXPECT_EQ(cache.forward(0), identity(4));
  EXPECT_EQ(cache.backward(12), identity(4));
}

TEST(TotalPropagator, CompositionOverHalves) {
  RandomStream rng(31);
  const ControlSystem sys = oracle::random_system(4, 2, rng);
  RealMatrix v(40, 2);
  for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = rng.normal();
  const PulseGrid full(40, 0.03);
  const PulseGrid half(20, 0.03);
  const Operator u = total_propagator(sys, ControlPulse(v, full));
  const Operator u1 = total_propagator(sys, ControlPulse(v.topRows(20), half));
  const Operator u2 =
      total_propagator(sys, ControlPulse(v.bottomRows(20), half));
  EXPECT_LT(max_abs(u - u2 * u1), 1e-13);
}

TEST(TotalPropagator, UnitarityDriftIsLinearAndSmall) {
  RandomStream rng(41);
  const ControlSystem sys = oracle::random_system(8, 2, rng);
  for (std::size_t n : {100u, 1000u, 10000u}) {
    RealMatrix v(n, 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = rng.normal();
    const Operator u = total_propagator(sys, ControlPulse(v, PulseGrid(n, 0.01)));
    const double err = (u.adjoint() * u - identity(8)).cwiseAbs().maxCoeff();
    EXPECT_LT(err, 1e-14 * static_cast<double>(n) + 1e-13) << "n=" << n;
    EXPECT_LT(err, 1e-10);
  }
}

// Sampling a smooth pulse at t_l = l dt converges to the time-ordered
// exponential at first order in dt.
TEST(TotalPropagator, TrotterConsistencyFirstOrder) {
  const ControlSystem sys = toffoli_system();
  const double tau = 2.0;
  auto omega = [](double t) {
    RealVector a(2);
    a << 0.8 * std::sin(1.3 * t), 0.5 * std::cos(0.7 * t);
    return a;
  };
  std::vector<Operator> us;
  for (std::size_t n : {25u, 50u, 100u, 200u, 400u}) {
    const PulseGrid g = PulseGrid::from_duration(n, tau);
    RealMatrix v(n, 2);
    for (std::size_t l = 1; l <= n; ++l) {
      v.row(static_cast<Eigen::Index>(l - 1)) = omega(g.time(l)).transpose();
    }
    us.push_back(total_propagator(sys, ControlPulse(v, g)));
  }
  const Operator exact = oracle::ode_propagator(sys, omega, {0.0, tau}, 1e-12);
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < us.size(); ++i) {
    lx.push_back(std::log(tau / (25.0 * std::pow(2.0, i))));
    ly.push_back(std::log(max_abs(us[i] - exact)));
  }
  // Least-squares slope of log error against log dt.
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  EXPECT_GE(sxy / sxx, 0.9);
}

TEST(TraceFidelity, Examples) {
  RandomStream rng(3);
  const Operator u8 = haar_unitary(8, rng);
  EXPECT_NEAR(std::abs(trace_fidelity(u8, u8) - Complex(8.0)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(trace_fidelity(identity(2), -identity(2)) - Complex(-2.0)),
              0.0, 1e-15);
  const Complex phase = std::polar(1.0, pi / 4);
  const Complex f = trace_fidelity(cnot_gate(), phase * cnot_gate());
  EXPECT_NEAR(std::abs(f - 4.0 * phase), 0.0, 1e-14);
  EXPECT_THROW((void)trace_fidelity(identity(2), identity(4)), InvalidArgument);
}

TEST(PhaseInvariantFidelity, Examples) {
  EXPECT_DOUBLE_EQ(phase_invariant_fidelity(toffoli_gate(), toffoli_gate()), 1.0);
  EXPECT_NEAR(phase_invariant_fidelity(pauli(PauliAxis::Z), pauli(PauliAxis::X)),
              0.0, 1e-16);
}

TEST(PhaseInvariantFidelity, EigenphaseOracle) {
  RandomStream rng(3);
  const Operator a = haar_unitary(4, rng);
  const Operator b = haar_unitary(4, rng);
  Eigen::ComplexEigenSolver<Operator> es(a.adjoint() * b);
  Complex sum = 0.0;
  for (Eigen::Index k = 0; k < 4; ++k) {
    sum += std::polar(1.0, std::arg(es.eigenvalues()[k]));
  }
  EXPECT_NEAR(phase_invariant_fidelity(a, b), std::abs(sum) / 4.0, 1e-13);
}

TEST(PhaseInvariantFidelity, GlobalPhaseInvariance) {
  RandomStream rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator a = haar_unitary(4, rng);
    const Operator b = haar_unitary(4, rng);
    const double theta = rng.uniform(-pi, pi);
    EXPECT_NEAR(phase_invariant_fidelity(a, std::polar(1.0, theta) * b),
                phase_invariant_fidelity(a, b), 1e-14);
  }
}

TEST(OperatorJson, RoundTripRowMajor) {
  Operator m(2, 2);
  m << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8);
  const auto j = to_json(m);
  EXPECT_EQ(j.at("dim").get<int>(), 2);
  EXPECT_DOUBLE_EQ(j.at("entries")[1][0].get<double>(), 3.0);
  EXPECT_DOUBLE_EQ(j.at("entries")[1][1].get<double>(), 4.0);
  EXPECT_EQ(operator_from_json(j), m);
  auto broken = j;
  broken["entries"].erase(0);
  EXPECT_THROW((void)operator_from_json(broken), InvalidArgument);
}

}  // namespace
}  // namespace grafs
