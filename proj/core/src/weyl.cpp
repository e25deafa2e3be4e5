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

#include "grafs/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "grafs/errors.hpp"

namespace grafs {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;

// Columns are the magic basis (|00>+|11>)/r2, i(|01>+|10>)/r2, (|01>-|10>)/r2,
// i(|00>-|11>)/r2. XX, YY and ZZ are simultaneously diagonal in it.
Operator magic_basis() {
  Operator q(4, 4);
  q << 1, 0, 0, kI,   //
      0, kI, 1, 0,    //
      0, kI, -1, 0,   //
      1, 0, 0, -kI;
  return q / std::numbers::sqrt2;
}

void require_two_qubit_unitary(const Operator& u, std::string_view what) {
  if (u.rows() != 4 || u.cols() != 4) {
    throw InvalidArgument(std::string(what) + ": expected a 4x4 unitary");
  }
  const double err = unitarity_error(u);
  if (!(err <= 1e-8)) {
    throw InvalidArgument(std::string(what) + ": input is not unitary (" +
                          std::to_string(err) + ")");
  }
}

// Sorted eigenphases of magic_gram(u) in [0, 2 pi).
std::array<double, 4> gram_angles(const Operator& u) {
  Eigen::ComplexEigenSolver<Operator> es(magic_gram(u), false);
  std::array<double, 4> a{};
  for (int k = 0; k < 4; ++k) {
    double t = std::arg(es.eigenvalues()[k]);
    if (t < 0) t += 2 * kPi;
    a[k] = t;
  }
  std::sort(a.begin(), a.end());
  return a;
}

double reduce_half_turn(double c) { return c - kPi * std::round(c / kPi); }

}  // namespace

Operator cartan_core(const WeylPoint& w) {
  // XX, YY, ZZ commute and square to 1, so each factor is cos + i sin.
  Operator out = identity(4);
  const double c[3] = {w.cx, w.cy, w.cz};
  const PauliAxis axes[3] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
  for (int k = 0; k < 3; ++k) {
    const Operator pp = kron(pauli(axes[k]), pauli(axes[k]));
    out = (std::cos(0.5 * c[k]) * identity(4) + kI * std::sin(0.5 * c[k]) * pp) *
          out;
  }
  return out;
}

GateTarget cartan_target(const WeylPoint& w, const Operator& k1,
                         const Operator& k2) {
  GateTarget t;
  t.unitary = k1 * cartan_core(w) * k2;
  t.name = "cartan";
  t.weyl = w;
  return t;
}

GateTarget cartan_target(const WeylPoint& w, RandomStream& rng) {
  const Operator k1 = haar_local_pair(rng);
  const Operator k2 = haar_local_pair(rng);
  GateTarget t = cartan_target(w, k1, k2);
  t.seed = rng.seed();
  return t;
}

Operator magic_gram(const Operator& u) {
  const Operator q = magic_basis();
  const Operator ub = q.adjoint() * u * q;
  return ub.transpose() * ub;
}

double perfect_entangler_margin(const Operator& u) {
  require_two_qubit_unitary(u, "perfect_entangler_margin");
  const auto a = gram_angles(u);
  double max_gap = a[0] + 2 * kPi - a[3];
  for (int k = 0; k < 3; ++k) max_gap = std::max(max_gap, a[k + 1] - a[k]);
  return kPi - max_gap;
}

bool is_perfect_entangler(const Operator& u) {
  return perfect_entangler_margin(u) >= -kPerfectEntanglerTolerance;
}

WeylPoint canonicalize(WeylPoint w) {
  double c[3] = {reduce_half_turn(w.cx), reduce_half_turn(w.cy),
                 reduce_half_turn(w.cz)};
  // Pair sign flips are free, so only the parity of negative entries matters.
  bool negative = false;
  for (double& x : c) {
    if (x < 0) {
      negative = !negative;
      x = -x;
    }
  }
  std::sort(c, c + 3, std::greater<>());
  constexpr double kTol = 1e-10;
  // A coordinate at pi/2 equals -pi/2 after a shift, which absorbs the parity;
  // so does a zero coordinate.
  if (std::abs(c[0] - kHalfPi) < kTol || c[2] < kTol) negative = false;
  if (c[2] < kTol) c[2] = 0.0;
  return {c[0], c[1], negative ? -c[2] : c[2]};
}

bool in_canonical_chamber(const WeylPoint& w, double tol) {
  return w.cx <= kHalfPi + tol && w.cx >= w.cy - tol &&
         w.cy >= std::abs(w.cz) - tol &&
         !(std::abs(w.cx - kHalfPi) <= tol && w.cz < -tol);
}

WeylPoint weyl_coordinates(const Operator& u) {
  require_two_qubit_unitary(u, "weyl_coordinates");
  const Complex det = u.determinant();
  const Operator su = u * std::pow(det, -0.25);

  Eigen::ComplexEigenSolver<Operator> es(magic_gram(su), false);
  std::array<double, 4> phi{};
  for (int k = 0; k < 4; ++k) phi[k] = std::arg(es.eigenvalues()[k]);
  std::sort(phi.begin(), phi.end(), std::greater<>());

  // det(magic_gram) = 1, so the phases sum to a multiple of 2 pi; lift them so
  // the sum is zero.
  double sum = phi[0] + phi[1] + phi[2] + phi[3];
  auto turns = static_cast<int>(std::lround(sum / (2 * kPi)));
  for (int t = 0; t < turns; ++t) phi[t] -= 2 * kPi;
  for (int t = 0; t < -turns; ++t) phi[3 - t] += 2 * kPi;

  // Core eigenphases are cx-cy+cz, -cx+cy+cz, cx+cy-cz, -cx-cy-cz.
  const WeylPoint raw{0.5 * (phi[0] + phi[2]), 0.5 * (phi[1] + phi[2]),
                      0.5 * (phi[0] + phi[1])};
  return canonicalize(raw);
}

WeylPoint sample_pe_weyl(RandomStream& rng) {
  for (;;) {
    const WeylPoint w{rng.uniform(0.0, kHalfPi), rng.uniform(0.0, kHalfPi),
                      rng.uniform(-kHalfPi, kHalfPi)};
    if (!(w.cx >= w.cy && w.cy >= std::abs(w.cz))) continue;
    if (is_perfect_entangler(cartan_core(w))) return w;
  }
}

}  // namespace grafs
