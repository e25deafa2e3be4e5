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

#include <benchmark/benchmark.h>

#include "grafs/gradient.hpp"
#include "grafs/models.hpp"
#include "grafs/optimizer.hpp"
#include "grafs/propagation.hpp"
#include "grafs/slepian.hpp"
#include "grafs/synthesis.hpp"

namespace grafs {
namespace {

RealMatrix random_amplitudes(Eigen::Index n, Eigen::Index m, std::uint64_t seed) {
  RandomStream rng(seed);
  RealMatrix omega(n, m);
  for (Eigen::Index i = 0; i < omega.size(); ++i) omega.data()[i] = rng.uniform(-1, 1);
  return omega;
}

void BM_StepPropagator(benchmark::State& state) {
  const auto d = static_cast<Eigen::Index>(state.range(0));
  RandomStream rng(1);
  Operator h(d, d);
  for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = {rng.normal(), rng.normal()};
  h = (h + h.adjoint()).eval();
  for (auto _ : state) benchmark::DoNotOptimize(step_propagator(h, 0.1));
}
BENCHMARK(BM_StepPropagator)->Arg(2)->Arg(4)->Arg(8);

void BM_TotalPropagatorToffoli(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ControlSystem sys = toffoli_system();
  const ControlPulse pulse(random_amplitudes(static_cast<Eigen::Index>(n), 2, 2),
                           PulseGrid::from_duration(n, kToffoliTau));
  for (auto _ : state) benchmark::DoNotOptimize(total_propagator(sys, pulse));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_TotalPropagatorToffoli)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GrapeGradientToffoli(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ControlSystem sys = toffoli_system();
  const ControlPulse pulse(random_amplitudes(static_cast<Eigen::Index>(n), 2, 3),
                           PulseGrid::from_duration(n, kToffoliTau));
  const Operator target = toffoli_gate();
  for (auto _ : state) benchmark::DoNotOptimize(grape_gradient(sys, pulse, target));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_GrapeGradientToffoli)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

// One optimizer evaluation at the Toffoli settings: propagate, GRAPE, contract.
void BM_GrafsEvaluateToffoli(benchmark::State& state) {
  const SynthesisSpec spec = synthesis_preset("toffoli-w0.02");
  const SlepianBasis basis = build_basis(spec);
  const GrafsProblem problem{resolve_system(spec.system), basis.matrix,
                             PulseGrid::from_duration(spec.n, spec.tau),
                             resolve_target(spec.target).unitary};
  const RealMatrix coeffs = random_amplitudes(basis.size(), 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(problem, coeffs));
}
BENCHMARK(BM_GrafsEvaluateToffoli)->Unit(benchmark::kMillisecond);

// Direct basis-space evaluation, for comparison with the contraction above.
void BM_GrafsDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RealMatrix basis = generate_dpss(n, 0.05).matrix;
  const ControlSystem sys = toffoli_system();
  const RealMatrix coeffs = random_amplitudes(basis.cols(), 2, 5);
  const PulseGrid grid = PulseGrid::from_duration(static_cast<std::size_t>(n), 10.0);
  const Operator target = toffoli_gate();
  for (auto _ : state) {
    benchmark::DoNotOptimize(grafs_gradient_direct(sys, basis, coeffs, grid, target));
  }
}
BENCHMARK(BM_GrafsDirect)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace grafs
