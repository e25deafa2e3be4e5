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

#include "grafs/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <sstream>

#include "grafs/gradient.hpp"
#include "grafs/propagation.hpp"

namespace grafs {
namespace {

// Snapshots are kept every iteration up to this many coefficients.
constexpr Eigen::Index kFullSnapshotLimit = 10000;
constexpr int kThinnedSnapshotStride = 10;

struct CurvaturePair {
  RealVector s;
  RealVector y;
  double rho;
};

RealVector flatten(const RealMatrix& m) {
  return Eigen::Map<const RealVector>(m.data(), m.size());
}

RealMatrix unflatten(const RealVector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const RealMatrix>(v.data(), rows, cols);
}

RealVector clip(RealVector x, double bound) {
  if (bound > 0.0) x = x.cwiseMax(-bound).cwiseMin(bound);
  return x;
}

// Zeroes components sitting on the box with the gradient pointing outward.
RealVector projected_gradient(const RealVector& x, const RealVector& g,
                              double bound) {
  RealVector pg = g;
  if (bound <= 0.0) return pg;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if ((x[i] >= bound && g[i] > 0.0) || (x[i] <= -bound && g[i] < 0.0)) {
      pg[i] = 0.0;
    }
  }
  return pg;
}

// Two-loop recursion for the inverse Hessian of -Phi applied to q.
RealVector two_loop(const std::deque<CurvaturePair>& history, RealVector q) {
  std::vector<double> alpha(history.size());
  for (std::size_t i = history.size(); i-- > 0;) {
    alpha[i] = history[i].rho * history[i].s.dot(q);
    q -= alpha[i] * history[i].y;
  }
  const auto& last = history.back();
  q *= last.s.dot(last.y) / last.y.squaredNorm();
  for (std::size_t i = 0; i < history.size(); ++i) {
    const double beta = history[i].rho * history[i].y.dot(q);
    q += (alpha[i] - beta) * history[i].s;
  }
  return q;
}

}  // namespace

void GrafsProblem::validate() const {
  if (static_cast<std::size_t>(basis.rows()) != grid.n_steps()) {
    throw InvalidArgument("basis rows must equal the number of time steps");
  }
  if (basis.cols() < 1) throw InvalidArgument("basis needs >= 1 column");
  if (target.rows() != system.dim() || target.cols() != system.dim()) {
    throw InvalidArgument("target dimension does not match the system");
  }
}

CoefficientMatrix::CoefficientMatrix(RealMatrix values, double bound)
    : values_(std::move(values)), bound_(bound) {
  if (!(bound_ >= 0.0)) throw InvalidArgument("coefficient bound must be >= 0");
  if (!values_.allFinite()) {
    throw InvalidArgument("coefficients must be finite");
  }
  if (bounded() && values_.cwiseAbs().maxCoeff() > bound_) {
    throw InvalidArgument("coefficients exceed the bound");
  }
}

CoefficientMatrix CoefficientMatrix::zeros(Eigen::Index k, Eigen::Index m,
                                           double bound) {
  return {RealMatrix::Zero(k, m), bound};
}

CoefficientMatrix CoefficientMatrix::uniform(Eigen::Index k, Eigen::Index m,
                                             double bound, double spread,
                                             RandomStream& rng) {
  RealMatrix v(k, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) v(i, j) = rng.uniform(-spread, spread);
  }
  if (bound > 0.0) v = v.cwiseMax(-bound).cwiseMin(bound);
  return {std::move(v), bound};
}

void OptimizerConfig::validate() const {
  if (max_iters < 0) throw InvalidArgument("max_iters must be >= 0");
  if (!(grad_tol > 0.0)) throw InvalidArgument("grad_tol must be > 0");
  if (!(shrink > 0.0 && shrink < 1.0)) {
    throw InvalidArgument("line-search shrink factor must lie in (0, 1)");
  }
  if (!(initial_step > 0.0)) throw InvalidArgument("initial_step must be > 0");
  if (!(sufficient_increase > 0.0 && sufficient_increase < 1.0)) {
    throw InvalidArgument("sufficient_increase must lie in (0, 1)");
  }
  if (!(coeff_bound >= 0.0)) throw InvalidArgument("coeff_bound must be >= 0");
  if (memory < 1) throw InvalidArgument("quasi-Newton memory must be >= 1");
  if (max_backtracks < 1) throw InvalidArgument("max_backtracks must be >= 1");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::GradientTolerance:
      return "gradient_tolerance";
    case Termination::FidelityTarget:
      return "fidelity_target";
    case Termination::MaxIterations:
      return "max_iterations";
    case Termination::LineSearchFailure:
      return "line_search_failure";
  }
  return "unknown";
}

Evaluation evaluate(const GrafsProblem& problem, const RealMatrix& coeffs) {
  RealMatrix omega = problem.basis * coeffs;
  if (!omega.allFinite()) throw NumericalError("pulse overflowed");
  const ControlPulse pulse(std::move(omega), problem.grid);
  const FidelityGradient g =
      grape_gradient(problem.system, pulse, problem.target);
  return {g.fidelity, g.trace, g.phase, grafs_gradient(g.grape, problem.basis)};
}

AscentResult ascend(const GrafsProblem& problem, const OptimizerConfig& cfg,
                    const CoefficientMatrix& a0) {
  problem.validate();
  cfg.validate();
  const Eigen::Index k = problem.basis_size();
  const auto m = static_cast<Eigen::Index>(problem.num_controls());
  if (a0.values().rows() != k || a0.values().cols() != m) {
    throw InvalidArgument("initial coefficients must be K x M");
  }
  const double bound = cfg.coeff_bound;
  if (bound > 0.0 && a0.values().cwiseAbs().maxCoeff() > bound) {
    throw InvalidArgument("initial coefficients violate the coefficient bound");
  }

  const auto start = std::chrono::steady_clock::now();
  const bool snapshot_every = k * m <= kFullSnapshotLimit;

  AscentResult result;
  RealVector x = flatten(a0.values());
  int evaluations = 0;

  auto eval = [&](const RealVector& at) {
    ++evaluations;
    Evaluation e;
    try {
      e = evaluate(problem, unflatten(at, k, m));
    } catch (const NumericalError& err) {
      throw AscentAborted(err.what(), unflatten(at, k, m));
    }
    if (!std::isfinite(e.fidelity) || !e.gradient.allFinite()) {
      throw AscentAborted("non-finite fidelity or gradient",
                          unflatten(at, k, m));
    }
    return e;
  };

  Evaluation cur = eval(x);
  RealVector g = flatten(cur.gradient);
  std::deque<CurvaturePair> history;
  double last_step = 0.0;

  for (int iter = 0;; ++iter) {
    const RealVector pg = projected_gradient(x, g, bound);
    const double grad_norm = pg.size() ? pg.cwiseAbs().maxCoeff() : 0.0;

    IterationRecord rec;
    rec.iter = iter;
    rec.fidelity = cur.fidelity;
    rec.trace_abs = std::abs(cur.trace);
    rec.phase = cur.phase;
    rec.grad_norm = grad_norm;
    rec.step = last_step;
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (snapshot_every || iter % kThinnedSnapshotStride == 0) {
      rec.has_snapshot = true;
      rec.coeffs = unflatten(x, k, m);
    }
    result.trace.records.push_back(std::move(rec));
    result.iterations = iter;

    if (cur.fidelity >= cfg.fid_target) {
      result.reason = Termination::FidelityTarget;
      break;
    }
    if (grad_norm < cfg.grad_tol) {
      result.reason = Termination::GradientTolerance;
      break;
    }
    if (iter >= cfg.max_iters) {
      result.reason = Termination::MaxIterations;
      break;
    }

    // Search direction on the free variables.
    auto free_only = [&](RealVector d) {
      for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (pg[i] == 0.0 && g[i] != 0.0) d[i] = 0.0;
      }
      return d;
    };
    auto steepest = [&]() -> RealVector { return pg / grad_norm; };

    RealVector dir;
    double step0 = cfg.initial_step;
    if (cfg.direction == SearchDirection::QuasiNewton && !history.empty()) {
      dir = free_only(two_loop(history, pg));
      if (!(dir.dot(pg) > 0.0) || !dir.allFinite()) {
        history.clear();
        dir = steepest();
      }
    } else {
      dir = steepest();
      if (cfg.direction == SearchDirection::SteepestAscent && last_step > 0.0) {
        step0 = 2.0 * last_step;
      }
    }

    auto line_search = [&](const RealVector& d, double eps, RealVector& x_new,
                           Evaluation& e_new) {
      for (int bt = 0; bt < cfg.max_backtracks; ++bt, eps *= cfg.shrink) {
        x_new = clip(x + eps * d, bound);
        const RealVector s = x_new - x;
        const double predicted = g.dot(s);
        if (!(predicted > 0.0)) continue;
        e_new = eval(x_new);
        if (e_new.fidelity >= cur.fidelity + cfg.sufficient_increase * predicted) {
          return eps;
        }
      }
      return 0.0;
    };

    RealVector x_new;
    Evaluation next;
    double eps = line_search(dir, step0, x_new, next);
    if (eps == 0.0 && !history.empty()) {
      history.clear();
      eps = line_search(steepest(), cfg.initial_step, x_new, next);
    }
    if (eps == 0.0) {
      result.reason = Termination::LineSearchFailure;
      break;
    }

    const RealVector g_new = flatten(next.gradient);
    CurvaturePair pair{x_new - x, -(g_new - g), 0.0};
    const double sy = pair.s.dot(pair.y);
    if (sy > 1e-12 * pair.s.norm() * pair.y.norm() && sy > 0.0) {
      pair.rho = 1.0 / sy;
      history.push_back(std::move(pair));
      if (static_cast<int>(history.size()) > cfg.memory) history.pop_front();
    }
    x = std::move(x_new);
    g = g_new;
    cur = std::move(next);
    last_step = eps;
  }

  result.coeffs = unflatten(x, k, m);
  result.fidelity = cur.fidelity;
  result.evaluations = evaluations;
  return result;
}

}  // namespace grafs
