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

#include <span>
#include <vector>

#include "grafs/operator.hpp"

namespace grafs {

/// Endpoint-to-peak ratio above which endpoint_filter drops a sequence.
/// Calibrated on (N = 1000, W = 0.02): keeps orders 0..35 of the 40.
inline constexpr double kDefaultEndpointThreshold = 0.15;

/// Discrete prolate spheroidal sequences of length n and half bandwidth w.
///
/// Column k of `matrix` is the sequence of order `orders[k]`, unit 2-norm,
/// scaled so that its first non-negligible sample is positive. Eigenvalues are
/// the concentrations v^T K v under the sinc kernel
///   K_nm = sin(2 pi w (n - m)) / (pi (n - m)),  K_nn = 2 w.
struct SlepianBasis {
  int n = 0;
  double half_bandwidth = 0.0;
  RealMatrix matrix;
  std::vector<double> eigenvalues;
  std::vector<int> orders;

  [[nodiscard]] int size() const { return static_cast<int>(matrix.cols()); }
};

/// First k_max Slepian sequences ordered by decreasing concentration.
///
/// Sequences come from the symmetric tridiagonal matrix that commutes with the
/// sinc kernel; each is then checked against the kernel itself, and the
/// returned concentrations are the kernel quadratic forms.
SlepianBasis generate_dpss(int n, double w, int k_max);

/// As above with k_max = effective_dimension(n, w) (at least 1).
SlepianBasis generate_dpss(int n, double w);

/// v^T K v for a unit-norm sequence. Rejects unnormalized input.
double concentration(std::span<const double> v, double w);

/// round(2 n w), the approximate dimension of band-limited sequences.
int effective_dimension(int n, double w);

/// max(|v(0)|, |v(N-1)|) / max_l |v(l)|.
double endpoint_ratio(const Eigen::Ref<const RealVector>& v);

/// Drops every sequence whose endpoint ratio exceeds rel_threshold.
SlepianBasis endpoint_filter(const SlepianBasis& basis,
                             double rel_threshold = kDefaultEndpointThreshold);

/// The dense n x n sinc kernel.
RealMatrix sinc_kernel(int n, double w);

}  // namespace grafs
