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

#include "grafs/operator.hpp"

#include <cmath>
#include <sstream>

#include "grafs/errors.hpp"

namespace grafs {

double hermitian_deviation(const Operator& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const Operator& u) {
  return (u.adjoint() * u - identity(u.rows())).cwiseAbs().maxCoeff();
}

void require_square(const Operator& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream msg;
    msg << what << ": expected a non-empty square matrix, got " << m.rows()
        << "x" << m.cols();
    throw InvalidArgument(msg.str());
  }
}

void require_hermitian(const Operator& h, std::string_view what, double tol) {
  require_square(h, what);
  const double dev = hermitian_deviation(h);
  if (!(dev <= tol)) {
    std::ostringstream msg;
    msg << what << ": not Hermitian, max |H - H^dagger| = " << dev
        << " exceeds " << tol;
    throw InvalidArgument(msg.str());
  }
}

Operator identity(Eigen::Index dim) { return Operator::Identity(dim, dim); }

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

nlohmann::json to_json(const Operator& op) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < op.rows(); ++i) {
    for (Eigen::Index j = 0; j < op.cols(); ++j) {
      entries.push_back({op(i, j).real(), op(i, j).imag()});
    }
  }
  return {{"dim", op.rows()}, {"entries", std::move(entries)}};
}

Operator operator_from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (dim <= 0 || entries.size() != static_cast<std::size_t>(dim * dim)) {
    throw InvalidArgument("operator json: entry count does not match dim^2");
  }
  Operator op(dim, dim);
  std::size_t idx = 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c, ++idx) {
      const auto& e = entries.at(idx);
      op(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return op;
}

ControlSystem::ControlSystem(Operator drift, std::vector<Operator> controls)
    : drift_(std::move(drift)), controls_(std::move(controls)) {
  require_hermitian(drift_, "drift Hamiltonian");
  if (controls_.empty()) {
    throw InvalidArgument("control system needs at least one control");
  }
  for (std::size_t j = 0; j < controls_.size(); ++j) {
    const std::string what = "control Hamiltonian " + std::to_string(j);
    require_hermitian(controls_[j], what);
    if (controls_[j].rows() != drift_.rows()) {
      throw InvalidArgument(what + ": dimension differs from the drift");
    }
  }
}

Operator ControlSystem::hamiltonian(
    const Eigen::Ref<const RealVector>& amplitudes) const {
  if (static_cast<std::size_t>(amplitudes.size()) != controls_.size()) {
    throw InvalidArgument("amplitude count does not match control count");
  }
  Operator h = drift_;
  for (std::size_t j = 0; j < controls_.size(); ++j) {
    h += amplitudes[static_cast<Eigen::Index>(j)] * controls_[j];
  }
  return h;
}

PulseGrid::PulseGrid(std::size_t n_steps, double dt)
    : n_steps_(n_steps), dt_(dt) {
  if (n_steps_ < 2) throw InvalidArgument("pulse grid needs N >= 2 steps");
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw InvalidArgument("pulse grid needs a finite dt > 0");
  }
}

PulseGrid PulseGrid::from_duration(std::size_t n_steps, double tau) {
  if (n_steps == 0) throw InvalidArgument("pulse grid needs N >= 2 steps");
  return PulseGrid(n_steps, tau / static_cast<double>(n_steps));
}

ControlPulse::ControlPulse(RealMatrix values, PulseGrid grid)
    : values_(std::move(values)), grid_(grid) {
  if (static_cast<std::size_t>(values_.rows()) != grid_.n_steps()) {
    throw InvalidArgument("pulse rows must equal the number of time steps");
  }
  if (values_.cols() < 1) throw InvalidArgument("pulse needs >= 1 control");
  if (!values_.allFinite()) {
    throw InvalidArgument("pulse contains non-finite amplitudes");
  }
}

}  // namespace grafs
