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

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace grafs {

using Complex = std::complex<double>;

/// Dense d x d complex matrix. Used for Hamiltonians and unitaries alike.
using Operator = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Entrywise tolerance for accepting a generator as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;

/// max_{ij} |H_ij - conj(H_ji)|.
double hermitian_deviation(const Operator& h);

/// ||U^dagger U - 1||_max.
double unitarity_error(const Operator& u);

/// Throws InvalidArgument naming `what` and the largest asymmetry when `h` is
/// not square or not Hermitian to within `tol`.
void require_hermitian(const Operator& h, std::string_view what,
                       double tol = kHermitianTolerance);

void require_square(const Operator& m, std::string_view what);

Operator identity(Eigen::Index dim);

/// Kronecker product a (x) b with a acting on the more significant index.
Operator kron(const Operator& a, const Operator& b);

/// {"dim": d, "entries": [[re, im], ...]} in row-major order.
nlohmann::json to_json(const Operator& op);
Operator operator_from_json(const nlohmann::json& j);

/// Drift Hamiltonian plus M >= 1 control Hamiltonians on a common space.
class ControlSystem {
 public:
  ControlSystem(Operator drift, std::vector<Operator> controls);

  [[nodiscard]] Eigen::Index dim() const { return drift_.rows(); }
  [[nodiscard]] std::size_t num_controls() const { return controls_.size(); }
  [[nodiscard]] const Operator& drift() const { return drift_; }
  [[nodiscard]] const Operator& control(std::size_t j) const {
    return controls_[j];
  }
  [[nodiscard]] const std::vector<Operator>& controls() const {
    return controls_;
  }

  /// H_d + sum_j amplitudes[j] H_j.
  [[nodiscard]] Operator hamiltonian(
      const Eigen::Ref<const RealVector>& amplitudes) const;

 private:
  Operator drift_;
  std::vector<Operator> controls_;
};

/// N equal steps of length dt. The total duration is always derived.
class PulseGrid {
 public:
  PulseGrid(std::size_t n_steps, double dt);

  /// Grid with n_steps covering a total duration tau.
  static PulseGrid from_duration(std::size_t n_steps, double tau);

  [[nodiscard]] std::size_t n_steps() const { return n_steps_; }
  [[nodiscard]] double dt() const { return dt_; }
  [[nodiscard]] double tau() const {
    return static_cast<double>(n_steps_) * dt_;
  }
  /// End time of step l, l in 1..N.
  [[nodiscard]] double time(std::size_t l) const {
    return static_cast<double>(l) * dt_;
  }

 private:
  std::size_t n_steps_;
  double dt_;
};

/// Piecewise-constant amplitudes. Row l-1 holds Omega_j(t_l) for all j.
class ControlPulse {
 public:
  ControlPulse(RealMatrix values, PulseGrid grid);

  [[nodiscard]] const RealMatrix& values() const { return values_; }
  [[nodiscard]] const PulseGrid& grid() const { return grid_; }
  [[nodiscard]] std::size_t n_steps() const { return grid_.n_steps(); }
  [[nodiscard]] std::size_t num_controls() const {
    return static_cast<std::size_t>(values_.cols());
  }

 private:
  RealMatrix values_;
  PulseGrid grid_;
};

}  // namespace grafs
