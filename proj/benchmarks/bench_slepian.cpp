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

#include "grafs/slepian.hpp"

namespace grafs {
namespace {

void BM_GenerateDpss(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double w = static_cast<double>(state.range(1)) / 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_dpss(n, w));
  state.counters["K"] = effective_dimension(n, w);
}
BENCHMARK(BM_GenerateDpss)
    ->Args({1000, 20})
    ->Args({1000, 100})
    ->Args({4000, 20})
    ->Unit(benchmark::kMillisecond);

void BM_EndpointFilter(benchmark::State& state) {
  const SlepianBasis b = generate_dpss(1000, 0.02);
  for (auto _ : state) benchmark::DoNotOptimize(endpoint_filter(b));
}
BENCHMARK(BM_EndpointFilter);

// Dense reference the tridiagonal route avoids.
void BM_DenseKernelEigensolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RealMatrix k = sinc_kernel(n, 0.02);
  for (auto _ : state) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(k, Eigen::EigenvaluesOnly);
    benchmark::DoNotOptimize(es.eigenvalues().data());
  }
}
BENCHMARK(BM_DenseKernelEigensolve)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace grafs
