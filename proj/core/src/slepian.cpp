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

#include "grafs/slepian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "grafs/errors.hpp"

namespace grafs {
namespace {

constexpr double kPi = std::numbers::pi;

// Samples below this fraction of the peak are ignored when fixing polarity.
constexpr double kPolarityFloor = 1e-10;

// ||K v - lambda v||_2 allowed for an accepted sequence.
constexpr double kKernelResidualTolerance = 1e-9;

void check_band(int n, double w) {
  if (n < 2) throw InvalidArgument("slepian: sequence length must be >= 2");
  if (!(w > 0.0 && w < 0.5)) {
    std::ostringstream msg;
    msg << "slepian: half bandwidth w = " << w << " outside (0, 0.5)";
    throw InvalidArgument(msg.str());
  }
}

// r[m] = sin(2 pi w m) / (pi m), r[0] = 2w.
RealVector kernel_row(int n, double w) {
  RealVector r(n);
  r[0] = 2.0 * w;
  for (int m = 1; m < n; ++m) {
    r[m] = std::sin(2.0 * kPi * w * m) / (kPi * m);
  }
  return r;
}

RealVector apply_kernel(const RealVector& r, const Eigen::Ref<const RealVector>& v) {
  const auto n = v.size();
  RealVector out = RealVector::Zero(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    double acc = 0.0;
    for (Eigen::Index b = 0; b < n; ++b) {
      acc += r[std::abs(a - b)] * v[b];
    }
    out[a] = acc;
  }
  return out;
}

// Solves (T - shift) x = rhs for the symmetric tridiagonal T = tridiag(e, d, e)
// by Gaussian elimination with partial pivoting (the dgtsv scheme). Zero pivots
// are nudged so inverse iteration at an exact eigenvalue still makes progress.
RealVector solve_shifted_tridiagonal(const RealVector& d, const RealVector& e,
                                     double shift, RealVector b) {
  const Eigen::Index n = d.size();
  RealVector diag = d.array() - shift;
  RealVector sup(n), low(n);  // low[i] becomes the second superdiagonal
  sup.setZero();
  low.setZero();
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    sup[i] = e[i];
    low[i] = e[i];
  }
  const double tiny = std::numeric_limits<double>::epsilon() *
                      std::max(1.0, d.cwiseAbs().maxCoeff());

  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(diag[i]) >= std::abs(low[i])) {
      if (std::abs(diag[i]) < tiny) diag[i] = tiny;
      const double fact = low[i] / diag[i];
      diag[i + 1] -= fact * sup[i];
      b[i + 1] -= fact * b[i];
      low[i] = 0.0;
    } else {
      const double fact = diag[i] / low[i];
      diag[i] = low[i];
      const double next = diag[i + 1];
      diag[i + 1] = sup[i] - fact * next;
      if (i + 2 < n) {
        low[i] = sup[i + 1];
        sup[i + 1] = -fact * low[i];
      } else {
        low[i] = 0.0;
      }
      sup[i] = next;
      const double bi = b[i];
      b[i] = b[i + 1];
      b[i + 1] = bi - fact * b[i + 1];
    }
  }
  if (std::abs(diag[n - 1]) < tiny) diag[n - 1] = tiny;

  RealVector x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double acc = b[i];
    if (i + 1 < n) acc -= sup[i] * x[i + 1];
    if (i + 2 < n) acc -= low[i] * x[i + 2];
    x[i] = acc / diag[i];
  }
  return x;
}

void fix_polarity(Eigen::Ref<RealVector> v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index l = 0; l < v.size(); ++l) {
    if (std::abs(v[l]) > kPolarityFloor * peak) {
      if (v[l] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

int effective_dimension(int n, double w) {
  check_band(n, w);
  return static_cast<int>(std::lround(2.0 * n * w));
}

RealMatrix sinc_kernel(int n, double w) {
  check_band(n, w);
  const RealVector r = kernel_row(n, w);
  RealMatrix k(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) k(a, b) = r[std::abs(a - b)];
  }
  return k;
}

double concentration(std::span<const double> v, double w) {
  const int n = static_cast<int>(v.size());
  check_band(n, w);
  const Eigen::Map<const RealVector> vec(v.data(), n);
  const double norm = vec.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "concentration: sequence must have unit 2-norm, got " << norm;
    throw InvalidArgument(msg.str());
  }
  return vec.dot(apply_kernel(kernel_row(n, w), vec));
}

double endpoint_ratio(const Eigen::Ref<const RealVector>& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  if (peak == 0.0) return 0.0;
  return std::max(std::abs(v[0]), std::abs(v[v.size() - 1])) / peak;
}

SlepianBasis generate_dpss(int n, double w, int k_max) {
  check_band(n, w);
  if (k_max < 1 || k_max > n) {
    throw InvalidArgument("slepian: k_max = " + std::to_string(k_max) +
                          " outside [1, " + std::to_string(n) + "]");
  }

  // Tridiagonal matrix commuting with the sinc kernel; its largest
  // eigenvalues pair with the most concentrated sequences.
  RealVector diag(n), off(n - 1);
  for (int l = 0; l < n; ++l) {
    const double x = (n - 1 - 2.0 * l) / 2.0;
    diag[l] = x * x * std::cos(2.0 * kPi * w);
  }
  for (int l = 1; l < n; ++l) off[l - 1] = l * (n - l) / 2.0;

  Eigen::SelfAdjointEigenSolver<RealMatrix> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("slepian: tridiagonal eigenvalue solve failed");
  }
  const RealVector& theta = es.eigenvalues();  // ascending

  SlepianBasis out;
  out.n = n;
  out.half_bandwidth = w;
  out.matrix.resize(n, k_max);
  out.eigenvalues.reserve(k_max);
  out.orders.reserve(k_max);

  const RealVector r = kernel_row(n, w);
  RealVector start(n);
  for (int l = 0; l < n; ++l) start[l] = 1.0 + static_cast<double>(l) / n;

  for (int k = 0; k < k_max; ++k) {
    const double shift = theta[n - 1 - k];
    RealVector v = start.normalized();
    for (int it = 0; it < 3; ++it) {
      v = solve_shifted_tridiagonal(diag, off, shift, v);
      for (int p = 0; p < k; ++p) {
        v -= out.matrix.col(p).dot(v) * out.matrix.col(p);
      }
      v.normalize();
    }
    fix_polarity(v);

    const RealVector kv = apply_kernel(r, v);
    const double lambda = v.dot(kv);
    const double residual = (kv - lambda * v).norm();
    if (!(residual <= kKernelResidualTolerance)) {
      std::ostringstream msg;
      msg << "slepian: order " << k << " fails the sinc-kernel eigen check ("
          << "residual " << residual << ")";
      throw NumericalError(msg.str());
    }
    out.matrix.col(k) = v;
    out.eigenvalues.push_back(lambda);
    out.orders.push_back(k);
  }
  return out;
}

SlepianBasis generate_dpss(int n, double w) {
  return generate_dpss(n, w, std::max(1, effective_dimension(n, w)));
}

SlepianBasis endpoint_filter(const SlepianBasis& basis, double rel_threshold) {
  if (!(rel_threshold > 0.0 && rel_threshold < 1.0)) {
    throw InvalidArgument("endpoint_filter: threshold must lie in (0, 1)");
  }
  std::vector<int> keep;
  double smallest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < basis.size(); ++k) {
    const double ratio = endpoint_ratio(basis.matrix.col(k));
    smallest = std::min(smallest, ratio);
    if (ratio <= rel_threshold) keep.push_back(k);
  }
  if (keep.empty()) {
    std::ostringstream msg;
    msg << "endpoint_filter: every sequence exceeds threshold " << rel_threshold
        << " (smallest endpoint ratio " << smallest << ")";
    throw InvalidArgument(msg.str());
  }
  SlepianBasis out;
  out.n = basis.n;
  out.half_bandwidth = basis.half_bandwidth;
  out.matrix.resize(basis.n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.matrix.col(static_cast<Eigen::Index>(c)) = basis.matrix.col(keep[c]);
    out.eigenvalues.push_back(basis.eigenvalues[keep[c]]);
    out.orders.push_back(basis.orders[keep[c]]);
  }
  return out;
}

}  // namespace grafs
