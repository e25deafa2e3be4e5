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

#include <array>

#include "grafs/models.hpp"
#include "grafs/rng.hpp"

namespace grafs {

// Two-qubit gates up to local operations.
//
// Every U in U(4) is K1 exp((i/2)(cx XX + cy YY + cz ZZ)) K2 with local K1, K2.
// Points related by permutations, sign flips of two coordinates and shifts of
// one coordinate by pi describe the same class. The canonical representative
// used here satisfies
//   pi/2 >= cx >= cy >= |cz|,   cz >= 0 whenever cx = pi/2,
// where cz < 0 marks the mirror image of the class with |cz|.

/// Tolerance on the angular-gap test of is_perfect_entangler.
inline constexpr double kPerfectEntanglerTolerance = 1e-9;

/// exp((i/2)(cx XX + cy YY + cz ZZ)).
Operator cartan_core(const WeylPoint& w);

/// K1 * core * K2 with given locals.
GateTarget cartan_target(const WeylPoint& w, const Operator& k1,
                         const Operator& k2);
/// K1 * core * K2 with K1, K2 Haar-random in SU(2) (x) SU(2).
GateTarget cartan_target(const WeylPoint& w, RandomStream& rng);

/// U_B^T U_B with U_B = U written in the magic (Bell) basis. Its spectrum is a
/// complete set of local invariants.
Operator magic_gram(const Operator& u);

/// Angle pi - (largest angular gap between eigenvalues of magic_gram(u)).
/// Non-negative exactly when the eigenvalue hull contains the origin, which is
/// the perfect-entangler condition; the magnitude is the angular distance to
/// the class boundary.
double perfect_entangler_margin(const Operator& u);

/// True when u can map some product state to a maximally entangled state.
bool is_perfect_entangler(const Operator& u);

WeylPoint canonicalize(WeylPoint w);
bool in_canonical_chamber(const WeylPoint& w, double tol = 1e-12);

/// Canonical coordinates of the local-equivalence class of u.
WeylPoint weyl_coordinates(const Operator& u);

/// Uniform sample (in the coordinates) from the perfect-entangler part of the
/// canonical chamber, by rejection from the enclosing box.
WeylPoint sample_pe_weyl(RandomStream& rng);

}  // namespace grafs
