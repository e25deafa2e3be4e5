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

#include "grafs/models.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "grafs/errors.hpp"
#include "grafs/weyl.hpp"

namespace grafs {
namespace {

void check_qubit(int q, int n_qubits, std::string_view what) {
  if (n_qubits < 1 || q < 0 || q >= n_qubits) {
    throw InvalidArgument(std::string(what) + ": qubit " + std::to_string(q) +
                          " out of range for " + std::to_string(n_qubits) +
                          " qubits");
  }
}

Operator embed(const Operator& single, int qubit, int n_qubits) {
  Operator out = Operator::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) {
    out = kron(out, q == qubit ? single : identity(2));
  }
  return out;
}

// Real coordinates of an anti-Hermitian matrix.
RealVector realify(const Operator& x) {
  const auto n = x.size();
  RealVector v(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[2 * i] = x.data()[i].real();
    v[2 * i + 1] = x.data()[i].imag();
  }
  return v;
}

double parse_double(std::string_view s, std::string_view context) {
  // std::from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument("cannot parse number '" + std::string(s) + "' in " +
                          std::string(context));
  }
  return value;
}

std::uint64_t parse_seed(std::string_view s, std::string_view context) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("cannot parse seed '" + std::string(s) + "' in " +
                          std::string(context));
  }
  return value;
}

}  // namespace

Operator pauli(PauliAxis axis) {
  Operator p(2, 2);
  switch (axis) {
    case PauliAxis::X:
      p << 0, 1, 1, 0;
      break;
    case PauliAxis::Y:
      p << 0, -kI, kI, 0;
      break;
    case PauliAxis::Z:
      p << 1, 0, 0, -1;
      break;
  }
  return p;
}

Operator pauli_control(PauliAxis axis, int qubit, int n_qubits) {
  check_qubit(qubit, n_qubits, "pauli_control");
  return embed(pauli(axis), qubit, n_qubits);
}

Operator heisenberg_exchange(int i, int j, int n_qubits) {
  check_qubit(i, n_qubits, "heisenberg_exchange");
  check_qubit(j, n_qubits, "heisenberg_exchange");
  if (i == j) throw InvalidArgument("heisenberg_exchange: needs i != j");
  const auto d = Eigen::Index{1} << n_qubits;
  Operator h = Operator::Zero(d, d);
  for (const auto axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    h += pauli_control(axis, i, n_qubits) * pauli_control(axis, j, n_qubits);
  }
  return h;
}

ControlSystem toffoli_system() {
  return ControlSystem(heisenberg_exchange(0, 1, 3) + heisenberg_exchange(1, 2, 3),
                       {pauli_control(PauliAxis::X, 0, 3),
                        pauli_control(PauliAxis::Y, 2, 3)});
}

ControlSystem two_qubit_system() {
  return ControlSystem(heisenberg_exchange(0, 1, 2),
                       {pauli_control(PauliAxis::X, 0, 2),
                        pauli_control(PauliAxis::Y, 0, 2),
                        pauli_control(PauliAxis::X, 1, 2),
                        pauli_control(PauliAxis::Y, 1, 2)});
}

ControlSystem single_qubit_x_system() {
  return ControlSystem(Operator::Zero(2, 2), {0.5 * pauli(PauliAxis::X)});
}

Operator toffoli_gate() {
  Operator u = identity(8);
  u(6, 6) = 0;
  u(7, 7) = 0;
  u(6, 7) = 1;
  u(7, 6) = 1;
  return u;
}

Operator cnot_gate() {
  Operator u = identity(4);
  u(2, 2) = 0;
  u(3, 3) = 0;
  u(2, 3) = 1;
  u(3, 2) = 1;
  return u;
}

Operator swap_gate() {
  Operator u = identity(4);
  u(1, 1) = 0;
  u(2, 2) = 0;
  u(1, 2) = 1;
  u(2, 1) = 1;
  return u;
}

Operator sqrt_swap_gate() {
  Operator u = identity(4);
  const Complex a = 0.5 * (1.0 + kI);
  const Complex b = 0.5 * (1.0 - kI);
  u(1, 1) = a;
  u(2, 2) = a;
  u(1, 2) = b;
  u(2, 1) = b;
  return u;
}

Operator x_rotation(double angle) {
  return std::cos(0.5 * angle) * identity(2) -
         kI * std::sin(0.5 * angle) * pauli(PauliAxis::X);
}

int lie_closure_dimension(const ControlSystem& sys) {
  const auto d = sys.dim();
  const auto max_dim = static_cast<int>(d * d);
  const double tol = 1e-9;

  std::vector<Operator> generators;
  generators.push_back(-kI * sys.drift());
  for (const auto& h : sys.controls()) generators.push_back(-kI * h);

  std::vector<RealVector> basis;
  auto try_add = [&](const Operator& x) {
    RealVector v = realify(x);
    const double scale = v.norm();
    if (scale < tol) return false;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= b.dot(v) * b;
    }
    if (v.norm() < tol * scale) return false;
    basis.push_back(v.normalized());
    return true;
  };

  std::vector<Operator> frontier;
  for (const auto& g : generators) {
    if (try_add(g)) frontier.push_back(g);
  }
  while (!frontier.empty() && static_cast<int>(basis.size()) < max_dim) {
    std::vector<Operator> next;
    for (const auto& g : generators) {
      for (const auto& x : frontier) {
        Operator c = g * x - x * g;
        const double norm = c.norm();
        if (norm < tol) continue;
        c /= norm;
        if (try_add(c)) next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  return static_cast<int>(basis.size());
}

GateTarget toffoli_target() { return {toffoli_gate(), "toffoli", {}, {}}; }

Operator haar_su2(RandomStream& rng) {
  double q[4];
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : q) {
      x = rng.normal();
      norm += x * x;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  for (double& x : q) x /= norm;
  Operator u(2, 2);
  u << Complex(q[0], q[1]), Complex(q[2], q[3]), Complex(-q[2], q[3]),
      Complex(q[0], -q[1]);
  return u;
}

Operator haar_local_pair(RandomStream& rng) {
  const Operator a = haar_su2(rng);
  const Operator b = haar_su2(rng);
  return kron(a, b);
}

Operator haar_unitary(Eigen::Index dim, RandomStream& rng) {
  Operator z(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(r, c) = Complex(re, im) / std::numbers::sqrt2;
    }
  }
  Eigen::HouseholderQR<Operator> qr(z);
  Operator q = qr.householderQ();
  const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

GateTarget resolve_target(std::string_view name) {
  if (name == "toffoli") return toffoli_target();
  if (name == "cnot") return {cnot_gate(), "cnot", WeylPoint{std::numbers::pi / 2, 0, 0}, {}};
  if (name == "swap") {
    const double h = std::numbers::pi / 2;
    return {swap_gate(), "swap", WeylPoint{h, h, h}, {}};
  }
  if (name == "sqrt-swap") {
    const double q = std::numbers::pi / 4;
    return {sqrt_swap_gate(), "sqrt-swap", WeylPoint{q, q, q}, {}};
  }
  if (name == "x-pi") return {x_rotation(std::numbers::pi), "x-pi", {}, {}};

  constexpr std::string_view kCartan = "cartan:";
  constexpr std::string_view kPeRandom = "pe-random:";
  if (name.starts_with(kCartan)) {
    const auto body = name.substr(kCartan.size());
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidArgument("target '" + std::string(name) +
                            "': expected cartan:<cx>,<cy>,<cz>:<seed>");
    }
    const auto coords = body.substr(0, colon);
    double c[3];
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      const auto comma = coords.find(',', pos);
      const auto end = (i < 2) ? comma : coords.size();
      if (i < 2 && comma == std::string_view::npos) {
        throw InvalidArgument("target '" + std::string(name) +
                              "': expected three comma-separated angles");
      }
      c[i] = parse_double(coords.substr(pos, end - pos), name);
      pos = end + 1;
    }
    const std::uint64_t seed = parse_seed(body.substr(colon + 1), name);
    RandomStream rng = RandomStream(seed).split("locals");
    GateTarget t = cartan_target(WeylPoint{c[0], c[1], c[2]}, rng);
    t.name = std::string(name);
    t.seed = seed;
    return t;
  }
  if (name.starts_with(kPeRandom)) {
    const std::uint64_t seed = parse_seed(name.substr(kPeRandom.size()), name);
    const RandomStream root(seed);
    RandomStream weyl_rng = root.split("weyl");
    RandomStream local_rng = root.split("locals");
    GateTarget t = cartan_target(sample_pe_weyl(weyl_rng), local_rng);
    t.name = std::string(name);
    t.seed = seed;
    return t;
  }
  throw InvalidArgument("unknown target '" + std::string(name) + "'");
}

ControlSystem resolve_system(std::string_view name) {
  if (name == "toffoli") return toffoli_system();
  if (name == "two-qubit") return two_qubit_system();
  if (name == "single-qubit-x") return single_qubit_x_system();
  throw InvalidArgument("unknown system '" + std::string(name) + "'");
}

}  // namespace grafs
