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

#include "grafs/synthesis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "grafs/io.hpp"
#include "grafs/models.hpp"
#include "grafs/propagation.hpp"

namespace grafs {
namespace {

double parse_number(std::string_view s, std::string_view context) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("cannot parse '" + std::string(s) + "' in " +
                          std::string(context));
  }
  return v;
}

}  // namespace

KPolicy KPolicy::parse(std::string_view text) {
  if (text == "full") return {};
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("k_policy '" + std::string(text) +
                          "': expected full, fraction:<f> or count:<k>");
  }
  const auto head = text.substr(0, colon);
  const double v = parse_number(text.substr(colon + 1), "k_policy");
  if (head == "fraction") {
    if (!(v > 0.0 && v <= 1.0)) {
      throw InvalidArgument("k_policy fraction must lie in (0, 1]");
    }
    return {Kind::Fraction, v};
  }
  if (head == "count") {
    if (!(v >= 1.0) || v != std::floor(v)) {
      throw InvalidArgument("k_policy count must be a positive integer");
    }
    return {Kind::Count, v};
  }
  throw InvalidArgument("k_policy '" + std::string(text) + "': unknown kind '" +
                        std::string(head) + "'");
}

std::string KPolicy::to_string() const {
  switch (kind) {
    case Kind::Full:
      return "full";
    case Kind::Fraction:
      return "fraction:" + format_double(value);
    case Kind::Count:
      return "count:" + std::to_string(static_cast<long>(value));
  }
  return "full";
}

int KPolicy::resolve(int effective_dim, int filtered) const {
  int k = filtered;
  if (kind == Kind::Fraction) {
    // The small offset keeps 0.75 * 40 = 30 from rounding up to 31.
    k = static_cast<int>(std::ceil(value * effective_dim - 1e-9));
  } else if (kind == Kind::Count) {
    k = static_cast<int>(value);
  }
  return std::clamp(k, 1, filtered);
}

std::string_view to_string(InitPolicy p) {
  return p == InitPolicy::Zero ? "zero" : "uniform";
}

InitPolicy parse_init_policy(std::string_view text) {
  if (text == "zero") return InitPolicy::Zero;
  if (text == "uniform") return InitPolicy::Uniform;
  throw InvalidArgument("init '" + std::string(text) +
                        "': expected zero or uniform");
}

void SynthesisSpec::validate() const {
  if (n < 2) throw InvalidArgument("n must be >= 2");
  if (!(w > 0.0 && w < 0.5)) throw InvalidArgument("w must lie in (0, 0.5)");
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw InvalidArgument("tau must be positive");
  }
  if (!(endpoint_threshold > 0.0)) {
    throw InvalidArgument("endpoint_threshold must be positive");
  }
  if (!(init_spread >= 0.0)) throw InvalidArgument("init_spread must be >= 0");
  optimizer.validate();
}

SynthesisSpec synthesis_preset(std::string_view name) {
  SynthesisSpec s;
  s.tau = kToffoliTau;
  s.optimizer.coeff_bound = 5.0;
  s.optimizer.max_iters = 200;
  if (name == "toffoli-w0.02") return s;
  if (name == "toffoli-smoke") {
    // Same 2NW = 40 on a coarser grid.
    s.n = 200;
    s.w = 0.1;
    return s;
  }
  if (name == "toffoli-w0.4") {
    s.w = 0.4;
    return s;
  }
  throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

SlepianBasis build_basis(const SynthesisSpec& spec) {
  const int dim = std::max(1, effective_dimension(spec.n, spec.w));
  SlepianBasis basis =
      endpoint_filter(generate_dpss(spec.n, spec.w, dim), spec.endpoint_threshold);
  const int keep = spec.k_policy.resolve(dim, basis.size());
  if (keep < basis.size()) {
    basis.matrix = basis.matrix.leftCols(keep).eval();
    basis.eigenvalues.resize(keep);
    basis.orders.resize(keep);
  }
  return basis;
}

SynthesisResult synthesize(const SynthesisSpec& spec) {
  spec.validate();
  ControlSystem sys = resolve_system(spec.system);
  GateTarget target = resolve_target(spec.target);
  if (target.unitary.rows() != sys.dim()) {
    throw InvalidArgument("target '" + spec.target + "' does not act on system '" +
                          spec.system + "'");
  }
  SlepianBasis basis = build_basis(spec);
  const PulseGrid grid = PulseGrid::from_duration(spec.n, spec.tau);
  GrafsProblem problem{sys, basis.matrix, grid, target.unitary};

  const auto k = basis.matrix.cols();
  const auto m = static_cast<Eigen::Index>(sys.num_controls());
  const double bound = spec.optimizer.coeff_bound;
  CoefficientMatrix a0 = CoefficientMatrix::zeros(k, m, bound);
  if (spec.init == InitPolicy::Uniform) {
    RandomStream rng = RandomStream(spec.optimizer.seed).split("init");
    a0 = CoefficientMatrix::uniform(k, m, bound, spec.init_spread, rng);
  }

  AscentResult ascent = ascend(problem, spec.optimizer, a0);
  RealMatrix pulse = basis.matrix * ascent.coeffs;
  Operator u = total_propagator(sys, ControlPulse(pulse, grid));
  return SynthesisResult{std::move(basis), grid,
                         std::move(ascent), std::move(pulse),
                         std::move(target.unitary), std::move(u)};
}

}  // namespace grafs
