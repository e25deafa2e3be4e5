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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "grafs/operator.hpp"
#include "grafs/rng.hpp"

namespace grafs {

// Qubits are numbered from 0; qubit 0 is the most significant tensor factor.

enum class PauliAxis { X, Y, Z };

Operator pauli(PauliAxis axis);

/// Single-qubit Pauli on `qubit`, identity elsewhere.
Operator pauli_control(PauliAxis axis, int qubit, int n_qubits);

/// sx^i sx^j + sy^i sy^j + sz^i sz^j with unit coupling.
Operator heisenberg_exchange(int i, int j, int n_qubits);

/// Exchange chain 0-1-2 with sigma_x on qubit 0 and sigma_y on qubit 2.
ControlSystem toffoli_system();

/// Exchange on 0-1 with sigma_x and sigma_y on each qubit (4 controls), in the
/// order (x0, y0, x1, y1).
ControlSystem two_qubit_system();

/// One qubit, no drift, single control sigma_x / 2. A constant amplitude of 1
/// for a time theta realizes the rotation exp(-i theta sigma_x / 2).
ControlSystem single_qubit_x_system();

Operator toffoli_gate();
Operator cnot_gate();
Operator swap_gate();
Operator sqrt_swap_gate();
/// exp(-i angle sigma_x / 2).
Operator x_rotation(double angle);

/// Dimension of the real Lie algebra generated by -iH_d and the -iH_j.
/// A system is controllable on SU(d) when this reaches d^2 - 1.
int lie_closure_dimension(const ControlSystem& sys);

struct WeylPoint {
  double cx = 0.0;
  double cy = 0.0;
  double cz = 0.0;
};

struct GateTarget {
  Operator unitary;
  std::string name;
  std::optional<WeylPoint> weyl;
  std::optional<std::uint64_t> seed;
};

GateTarget toffoli_target();

/// Haar-random element of SU(2).
Operator haar_su2(RandomStream& rng);
/// Haar-random element of SU(2) (x) SU(2).
Operator haar_local_pair(RandomStream& rng);
/// Haar-random element of U(d) (Ginibre QR with phase correction).
Operator haar_unitary(Eigen::Index dim, RandomStream& rng);

/// Named gate or system registry for CLI strings.
///   targets: "toffoli", "cnot", "swap", "sqrt-swap", "x-pi",
///            "cartan:<cx>,<cy>,<cz>:<seed>", "pe-random:<seed>"
///   systems: "toffoli", "two-qubit", "single-qubit-x"
GateTarget resolve_target(std::string_view name);
ControlSystem resolve_system(std::string_view name);

}  // namespace grafs
