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

#include "grafs/qsl.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "grafs/errors.hpp"
#include "grafs/io.hpp"
#include "grafs/models.hpp"
#include "grafs/optimizer.hpp"
#include "grafs/propagation.hpp"
#include "grafs/rng.hpp"

namespace grafs {
namespace {

constexpr double kMaxEffectiveBandwidth = 0.49;

struct CandidateOutcome {
  double fidelity = -std::numeric_limits<double>::infinity();
  bool success = false;
  int iterations = 0;
  int restarts_used = 0;
};

CandidateOutcome run_candidate(const ControlSystem& sys, const Operator& target,
                               const RealMatrix& basis, double tau,
                               double f_star, const BracketConfig& cfg,
                               std::uint64_t seed) {
  const GrafsProblem problem{sys, basis,
                             PulseGrid::from_duration(cfg.n, tau), target};
  OptimizerConfig oc;
  oc.max_iters = cfg.max_iters;
  oc.grad_tol = cfg.grad_tol;
  oc.fid_target = f_star;
  oc.coeff_bound = cfg.alpha_bound;
  oc.seed = seed;

  const auto k = basis.cols();
  const auto m = static_cast<Eigen::Index>(sys.num_controls());
  CandidateOutcome out;
  for (int r = 0; r < cfg.restarts; ++r) {
    RandomStream rng = RandomStream(seed).split("init", r);
    const auto a0 = CoefficientMatrix::uniform(k, m, cfg.alpha_bound,
                                               cfg.init_spread, rng);
    ++out.restarts_used;
    try {
      const AscentResult res = ascend(problem, oc, a0);
      out.iterations += res.iterations;
      out.fidelity = std::max(out.fidelity, res.fidelity);
    } catch (const AscentAborted&) {
      // A blown-up run is a failed restart, not a failed sweep.
      continue;
    }
    if (out.fidelity >= f_star) {
      out.success = true;
      break;
    }
  }
  return out;
}

CandidateOutcome drift_only(const ControlSystem& sys, const Operator& target,
                            double tau, double f_star, int n) {
  const PulseGrid grid = PulseGrid::from_duration(n, tau);
  const ControlPulse zero(
      RealMatrix::Zero(n, static_cast<Eigen::Index>(sys.num_controls())), grid);
  CandidateOutcome out;
  out.fidelity = phase_invariant_fidelity(target, total_propagator(sys, zero));
  out.success = out.fidelity >= f_star;
  return out;
}

}  // namespace

double qsl_bound(double delta, int n, double w) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw InvalidArgument("qsl_bound: delta must lie in [0, 1]");
  }
  if (n < 1) throw InvalidArgument("qsl_bound: n must be >= 1");
  if (!(w > 0.0)) throw InvalidArgument("qsl_bound: w must be positive");
  return delta / (2.0 * std::sqrt(static_cast<double>(n)) * w);
}

BracketState::BracketState(double lo, double hi) : lo_(lo), mid_(lo), hi_(hi) {
  if (!(lo >= 0.0 && hi > lo)) {
    throw InvalidArgument("bracket needs 0 <= lo < hi");
  }
  place_mid();
}

void BracketState::place_mid() { mid_ = lo_ + (hi_ - lo_) / (1.0 + kGoldenRatio); }

void BracketState::on_success() {
  hi_ = mid_;
  place_mid();
}

void BracketState::on_failure() {
  lo_ = mid_;
  place_mid();
}

void BracketConfig::validate() const {
  if (n < 2) throw InvalidArgument("bracket n must be >= 2");
  if (!(alpha_bound > 0.0)) throw InvalidArgument("alpha_bound must be > 0");
  if (max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (!(init_spread >= 0.0)) throw InvalidArgument("init_spread must be >= 0");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw InvalidArgument("rel_tol must lie in (0, 1)");
  }
  if (!(tau_ref >= 0.0)) throw InvalidArgument("tau_ref must be >= 0");
  if (!(start_tau >= 0.0)) throw InvalidArgument("start_tau must be >= 0");
  if (max_doublings < 0) throw InvalidArgument("max_doublings must be >= 0");
}

double effective_bandwidth(const BracketConfig& cfg, double w_nominal,
                           double tau) {
  if (cfg.basis == QslBasis::Identity) return 0.5;
  return w_nominal * tau / cfg.reference_duration();
}

RealMatrix qsl_basis(const BracketConfig& cfg, double w_nominal, double tau) {
  if (cfg.basis == QslBasis::Identity) return RealMatrix::Identity(cfg.n, cfg.n);
  const double w = effective_bandwidth(cfg, w_nominal, tau);
  const int k = std::max(1, effective_dimension(cfg.n, w));
  const SlepianBasis raw = generate_dpss(cfg.n, w, k);
  // At very short durations no sequence passes the filter. That leaves no
  // admissible control, which the caller scores as a zero pulse.
  bool any = false;
  for (int j = 0; j < raw.size(); ++j) {
    any = any || endpoint_ratio(raw.matrix.col(j)) <= cfg.endpoint_threshold;
  }
  if (!any) return RealMatrix(cfg.n, 0);
  return endpoint_filter(raw, cfg.endpoint_threshold).matrix;
}

SweepRecord min_time_bracket(const ControlSystem& sys, const Operator& target,
                             double w_nominal, double f_star,
                             const BracketConfig& cfg, std::uint64_t seed,
                             Evidence* evidence) {
  cfg.validate();
  if (!(f_star > 0.0 && f_star < 1.0)) {
    throw InvalidArgument("f_star must lie in (0, 1)");
  }
  if (!(w_nominal > 0.0)) throw InvalidArgument("nominal W must be positive");
  if (target.rows() != sys.dim()) {
    throw InvalidArgument("target dimension does not match the system");
  }

  SweepRecord rec;
  rec.seed = seed;
  rec.w = w_nominal;
  rec.n = cfg.n;
  rec.f_star = f_star;

  // Longest duration whose per-sample bandwidth stays below Nyquist.
  const double tau_cap =
      cfg.basis == QslBasis::Identity
          ? std::numeric_limits<double>::infinity()
          : kMaxEffectiveBandwidth * cfg.reference_duration() / w_nominal;

  auto evaluate = [&](double tau, BracketStep::Kind kind) {
    BracketStep step;
    step.kind = kind;
    step.tau = tau;
    step.w_effective = effective_bandwidth(cfg, w_nominal, tau);
    const RealMatrix basis = qsl_basis(cfg, w_nominal, tau);
    step.k = static_cast<int>(basis.cols());
    if (evidence) {
      if (auto it = evidence->find(tau); it != evidence->end()) {
        step.fidelity = it->second;
        step.success = it->second >= f_star;
        step.reused = true;
        return step;
      }
    }
    const CandidateOutcome out =
        basis.cols() == 0
            ? drift_only(sys, target, tau, f_star, cfg.n)
            : run_candidate(sys, target, basis, tau, f_star, cfg, seed);
    step.fidelity = out.fidelity;
    step.success = out.success;
    step.iterations = out.iterations;
    step.restarts_used = out.restarts_used;
    rec.iterations += out.iterations;
    if (evidence) (*evidence)[tau] = out.fidelity;
    return step;
  };

  // Lower end: half the analytic bound, assumed infeasible without a run.
  double lo = 0.5 * qsl_bound(qsl_delta(f_star), cfg.n,
                              effective_bandwidth(cfg, w_nominal, 1.0));
  if (cfg.basis == QslBasis::Slepian) {
    // W_eff grows with tau, so the bound is solved self-consistently:
    // tau >= delta tau_ref / (2 sqrt(N) w tau).
    lo = 0.5 * std::sqrt(qsl_delta(f_star) * cfg.reference_duration() /
                         (2.0 * std::sqrt(static_cast<double>(cfg.n)) * w_nominal));
  }
  rec.tau_lo_initial = lo;

  double tau = cfg.start_tau > 0.0 ? cfg.start_tau : 10.0 / w_nominal;
  tau = std::min(tau, tau_cap);
  double hi = 0.0;
  for (int d = 0;; ++d) {
    BracketStep step = evaluate(tau, BracketStep::Kind::Probe);
    if (!step.success) lo = std::max(lo, tau);
    step.lo = lo;
    step.hi = step.success ? tau : 0.0;
    rec.audit.push_back(step);
    if (step.success) {
      hi = tau;
      break;
    }
    if (d >= cfg.max_doublings || tau >= tau_cap) {
      rec.status = "bound-infeasible";
      rec.tau_min = std::numeric_limits<double>::quiet_NaN();
      return rec;
    }
    tau = std::min(2.0 * tau, tau_cap);
  }
  if (!(lo < hi)) lo = 0.0;

  BracketState state(lo, hi);
  rec.audit.back().mid = state.mid();
  while (state.width() >= cfg.rel_tol * state.mid()) {
    BracketStep step = evaluate(state.mid(), BracketStep::Kind::Mid);
    if (step.success) {
      state.on_success();
    } else {
      state.on_failure();
    }
    step.lo = state.lo();
    step.mid = state.mid();
    step.hi = state.hi();
    rec.audit.push_back(step);
  }
  rec.tau_min = state.hi();
  rec.status = "ok";
  return rec;
}

std::vector<double> replay_bracket(const SweepRecord& record) {
  std::vector<double> taus;
  if (record.audit.empty()) return taus;
  double lo = record.tau_lo_initial;
  double tau = record.audit.front().tau;
  std::size_t i = 0;
  for (; i < record.audit.size(); ++i) {
    const BracketStep& s = record.audit[i];
    if (s.kind != BracketStep::Kind::Probe) break;
    taus.push_back(tau);
    if (s.success) break;
    lo = std::max(lo, tau);
    // The probe sequence doubles until capped; the cap is visible in the
    // trail as the next recorded probe.
    if (i + 1 < record.audit.size()) tau = record.audit[i + 1].tau;
  }
  if (i >= record.audit.size() || !record.audit[i].success) return taus;
  double hi = record.audit[i].tau;
  if (!(lo < hi)) lo = 0.0;
  BracketState state(lo, hi);
  for (++i; i < record.audit.size(); ++i) {
    taus.push_back(state.mid());
    if (record.audit[i].success) {
      state.on_success();
    } else {
      state.on_failure();
    }
  }
  return taus;
}

std::vector<SweepTarget> perfect_entangler_targets(int count,
                                                   std::uint64_t root_seed) {
  if (count < 0) throw InvalidArgument("target count must be >= 0");
  std::vector<SweepTarget> out;
  const RandomStream root(root_seed);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = root.split("targets", i).seed();
    SweepTarget t;
    t.seed = s;
    t.id = "pe-random:" + std::to_string(s);
    t.unitary = resolve_target(t.id).unitary;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<SweepRecord> sweep(
    const ControlSystem& sys, const SweepConfig& cfg,
    const std::function<void(const SweepRecord&)>& on_record) {
  cfg.bracket.validate();
  if (cfg.targets.empty() || cfg.w_grid.empty() || cfg.f_stars.empty()) {
    throw InvalidArgument("sweep needs targets, a W grid and thresholds");
  }
  for (const auto& t : cfg.targets) {
    if (t.unitary.rows() != sys.dim()) {
      throw InvalidArgument("sweep target " + t.id +
                            " does not act on the system");
    }
  }
  // Strictest first so looser thresholds reuse its evidence.
  std::vector<std::size_t> f_order(cfg.f_stars.size());
  for (std::size_t i = 0; i < f_order.size(); ++i) f_order[i] = i;
  std::sort(f_order.begin(), f_order.end(), [&](auto a, auto b) {
    return cfg.f_stars[a] > cfg.f_stars[b];
  });

  const std::size_t n_w = cfg.w_grid.size();
  const std::size_t n_f = cfg.f_stars.size();
  const std::size_t n_cells = cfg.targets.size() * n_w;
  std::vector<SweepRecord> records(n_cells * n_f);
  std::mutex sink_mutex;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  auto run_cell = [&](std::size_t cell) {
    const SweepTarget& target = cfg.targets[cell / n_w];
    const double w = cfg.w_grid[cell % n_w];
    const std::uint64_t seed =
        RandomStream(cfg.seed).split(target.id + "@" + format_double(w)).seed();
    Evidence evidence;
    double stricter_tau = std::numeric_limits<double>::infinity();
    for (std::size_t fi : f_order) {
      SweepRecord rec = min_time_bracket(sys, target.unitary, w, cfg.f_stars[fi],
                                         cfg.bracket, seed, &evidence);
      rec.target_id = target.id;
      if (rec.status == "ok") {
        if (stricter_tau < rec.tau_min) {
          rec.tau_min = stricter_tau;
          rec.tau_min_from_stricter = true;
        }
        stricter_tau = std::min(stricter_tau, rec.tau_min);
      }
      {
        std::lock_guard lock(sink_mutex);
        if (on_record) on_record(rec);
      }
      records[cell * n_f + fi] = std::move(rec);
    }
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t cell = next.fetch_add(1);
      if (cell >= n_cells) return;
      try {
        run_cell(cell);
      } catch (...) {
        std::lock_guard lock(sink_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_cells);
        return;
      }
    }
  };

  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

FitResult fit_inverse_bandwidth(const std::vector<double>& w,
                                const std::vector<double>& tau) {
  if (w.size() != tau.size()) {
    throw InvalidArgument("fit: W and tau lists differ in length");
  }
  std::map<double, std::vector<double>> groups;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0) || !std::isfinite(tau[i])) {
      throw InvalidArgument("fit: W must be positive and tau finite");
    }
    groups[w[i]].push_back(tau[i]);
  }
  if (groups.size() < 3) {
    throw InvalidArgument("fit: needs at least 3 distinct W values");
  }

  FitResult fit;
  const auto n = static_cast<Eigen::Index>(groups.size());
  RealMatrix design(n, 2);
  RealVector rhs(n);
  Eigen::Index row = 0;
  for (const auto& [wv, values] : groups) {
    FitPoint p;
    p.w = wv;
    p.count = static_cast<int>(values.size());
    for (double v : values) p.mean += v;
    p.mean /= p.count;
    if (p.count > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - p.mean) * (v - p.mean);
      p.stddev = std::sqrt(ss / (p.count - 1));
    }
    design(row, 0) = 1.0 / wv;
    design(row, 1) = 1.0;
    rhs[row] = p.mean;
    fit.points.push_back(p);
    ++row;
  }
  Eigen::ColPivHouseholderQR<RealMatrix> qr(design);
  qr.setThreshold(1e-12);
  if (qr.rank() < 2) throw NumericalError("fit: degenerate design matrix");
  const RealVector coef = qr.solve(rhs);
  fit.a = coef[0];
  fit.b = coef[1];
  fit.residual = std::sqrt((design * coef - rhs).squaredNorm() /
                           static_cast<double>(n));
  if (!std::isfinite(fit.a) || !std::isfinite(fit.b)) {
    throw NumericalError("fit: non-finite coefficients");
  }
  return fit;
}

std::map<double, FitResult> fit_sweep(const std::vector<SweepRecord>& records) {
  std::map<double, std::pair<std::vector<double>, std::vector<double>>> by_f;
  for (const auto& r : records) {
    if (r.status != "ok") continue;
    by_f[r.f_star].first.push_back(r.w);
    by_f[r.f_star].second.push_back(r.tau_min);
  }
  std::map<double, FitResult> out;
  for (const auto& [f, data] : by_f) {
    out[f] = fit_inverse_bandwidth(data.first, data.second);
  }
  return out;
}

}  // namespace grafs
