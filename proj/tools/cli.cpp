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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "grafs/errors.hpp"
#include "grafs/gradient.hpp"
#include "grafs/io.hpp"
#include "grafs/models.hpp"
#include "grafs/propagation.hpp"

namespace grafs::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kDefaultOutDir = "grafs-out";

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out + "]";
}

std::string_view to_string(SearchDirection d) {
  return d == SearchDirection::QuasiNewton ? "quasi-newton" : "steepest";
}

SearchDirection parse_direction(const std::string& s) {
  if (s == "quasi-newton") return SearchDirection::QuasiNewton;
  if (s == "steepest") return SearchDirection::SteepestAscent;
  throw InvalidArgument("direction must be quasi-newton or steepest, got '" +
                        s + "'");
}

std::string_view to_string(QslBasis b) {
  return b == QslBasis::Slepian ? "slepian" : "identity";
}

QslBasis parse_qsl_basis(const std::string& s) {
  if (s == "slepian") return QslBasis::Slepian;
  if (s == "identity") return QslBasis::Identity;
  throw InvalidArgument("basis must be slepian or identity, got '" + s + "'");
}

std::string render(const RunConfig& c, bool runtime) {
  std::ostringstream o;
  auto num = [](double x) { return format_double(x); };
  o << "seed=" << c.seed << "\n";
  if (runtime) {
    o << "out=" << quoted(c.out_dir.string()) << "\n";
    o << "workers=" << c.workers << "\n";
  }
  o << "[" << to_string(c.command) << "]\n";
  switch (c.command) {
    case Command::Slepian: {
      const auto& s = c.slepian;
      o << "n=" << s.n << "\nw=" << num(s.w) << "\nk_max=" << s.k_max
        << "\nfilter=" << (s.filter ? "true" : "false")
        << "\nendpoint_threshold=" << num(s.endpoint_threshold) << "\n";
      break;
    }
    case Command::Synthesize: {
      const auto& s = c.synthesize;
      const auto& oc = s.optimizer;
      o << "system=" << quoted(s.system) << "\ntarget=" << quoted(s.target)
        << "\nn=" << s.n << "\nw=" << num(s.w) << "\ntau=" << num(s.tau)
        << "\nk_policy=" << quoted(s.k_policy.to_string())
        << "\nendpoint_threshold=" << num(s.endpoint_threshold)
        << "\ninit=" << quoted(std::string(to_string(s.init)))
        << "\ninit_spread=" << num(s.init_spread)
        << "\nalpha_bound=" << num(oc.coeff_bound)
        << "\nmax_iters=" << oc.max_iters << "\ngrad_tol=" << num(oc.grad_tol)
        << "\nfid_target=" << num(oc.fid_target)
        << "\nmemory=" << oc.memory
        << "\ndirection=" << quoted(std::string(to_string(oc.direction)))
        << "\ninitial_step=" << num(oc.initial_step)
        << "\nshrink=" << num(oc.shrink)
        << "\nsufficient_increase=" << num(oc.sufficient_increase) << "\n";
      break;
    }
    case Command::GradCheck: {
      const auto& g = c.grad_check;
      o << "system=" << quoted(g.system) << "\nn=" << g.n
        << "\ntau=" << num(g.tau) << "\namplitude=" << num(g.amplitude)
        << "\nsamples=" << g.samples << "\ntolerance=" << num(g.tolerance)
        << "\n";
      break;
    }
    case Command::QslSweep: {
      const auto& q = c.qsl_sweep;
      const auto& b = q.bracket;
      o << "system=" << quoted(q.system) << "\ntargets=" << q.targets
        << "\nw_grid=" << list(q.w_grid) << "\nf_stars=" << list(q.f_stars)
        << "\nn=" << b.n << "\nbasis=" << quoted(std::string(to_string(b.basis)))
        << "\ntau_ref=" << num(b.tau_ref) << "\nalpha_bound=" << num(b.alpha_bound)
        << "\nmax_iters=" << b.max_iters << "\nrestarts=" << b.restarts
        << "\ninit_spread=" << num(b.init_spread)
        << "\ngrad_tol=" << num(b.grad_tol) << "\nrel_tol=" << num(b.rel_tol)
        << "\nstart_tau=" << num(b.start_tau)
        << "\nmax_doublings=" << b.max_doublings
        << "\nendpoint_threshold=" << num(b.endpoint_threshold) << "\n";
      break;
    }
  }
  return o.str();
}

// Options of the synthesize subcommand. Unset fields fall back to the preset.
struct SynthFlags {
  std::string preset;
  std::optional<std::string> system, target, k_policy, init, direction;
  std::optional<int> n, max_iters, memory;
  std::optional<double> w, tau, endpoint_threshold, init_spread, alpha_bound,
      grad_tol, fid_target, initial_step, shrink, sufficient_increase;
};

SynthesisSpec resolve_synthesis(const SynthFlags& f, std::uint64_t seed) {
  SynthesisSpec s;
  if (!f.preset.empty()) {
    s = synthesis_preset(f.preset);
  } else if (!f.tau) {
    throw InvalidArgument("synthesize: --tau is required without --preset");
  }
  if (f.system) s.system = *f.system;
  if (f.target) s.target = *f.target;
  if (f.n) s.n = *f.n;
  if (f.w) s.w = *f.w;
  if (f.tau) s.tau = *f.tau;
  if (f.k_policy) s.k_policy = KPolicy::parse(*f.k_policy);
  if (f.endpoint_threshold) s.endpoint_threshold = *f.endpoint_threshold;
  if (f.init) s.init = parse_init_policy(*f.init);
  if (f.init_spread) s.init_spread = *f.init_spread;
  auto& oc = s.optimizer;
  if (f.alpha_bound) oc.coeff_bound = *f.alpha_bound;
  if (f.max_iters) oc.max_iters = *f.max_iters;
  if (f.grad_tol) oc.grad_tol = *f.grad_tol;
  if (f.fid_target) oc.fid_target = *f.fid_target;
  if (f.memory) oc.memory = *f.memory;
  if (f.direction) oc.direction = parse_direction(*f.direction);
  if (f.initial_step) oc.initial_step = *f.initial_step;
  if (f.shrink) oc.shrink = *f.shrink;
  if (f.sufficient_increase) oc.sufficient_increase = *f.sufficient_increase;
  oc.seed = seed;
  // Resolve names now so typos fail before any output is written.
  (void)resolve_system(s.system);
  (void)resolve_target(s.target);
  s.validate();
  return s;
}

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw InvalidArgument("output directory " + dir.string() +
                          " cannot be created: " + ec.message());
  }
  const fs::path probe = dir / ".grafs-write-probe";
  {
    std::ofstream f(probe);
    if (!f) {
      throw InvalidArgument("output directory " + dir.string() +
                            " is not writable");
    }
  }
  fs::remove(probe, ec);
}

ArtifactHeader header_for(const RunConfig& c) { return {c.hash(), c.seed}; }

void write_resolved(const RunConfig& c) {
  write_file_atomic(c.out_dir / "config.resolved",
                    header_for(c).comment_line() + "\n" + c.resolved());
}

json config_echo(const RunConfig& c) { return render(c, false); }

int run_slepian(const RunConfig& c) {
  const auto& p = c.slepian;
  const int k = p.k_max > 0 ? p.k_max : std::max(1, effective_dimension(p.n, p.w));
  SlepianBasis basis = generate_dpss(p.n, p.w, k);
  if (p.filter) basis = endpoint_filter(basis, p.endpoint_threshold);

  std::vector<std::string> cols{"ell"};
  for (int j = 0; j < basis.size(); ++j) cols.push_back("v" + std::to_string(j));
  CsvTable table(cols);
  for (int l = 0; l < p.n; ++l) {
    auto& row = table.add_row();
    row << l;
    for (int j = 0; j < basis.size(); ++j) row << basis.matrix(l, j);
  }
  std::vector<double> ratios;
  for (int j = 0; j < basis.size(); ++j) {
    ratios.push_back(endpoint_ratio(basis.matrix.col(j)));
  }
  const ArtifactHeader h = header_for(c);
  write_csv(c.out_dir / "slepian.csv", table, h);
  write_json(c.out_dir / "slepian.json",
             {{"n", p.n},
              {"w", p.w},
              {"orders", basis.orders},
              {"eigenvalues", basis.eigenvalues},
              {"endpoint_ratios", ratios}},
             h);
  return kOk;
}

int run_synthesize(const RunConfig& c) {
  const ArtifactHeader h = header_for(c);
  const SynthesisResult r = [&] {
    try {
      return synthesize(c.synthesize);
    } catch (const AscentAborted& e) {
      write_json(c.out_dir / "abort.json",
                 {{"error", e.what()},
                  {"coefficients", std::vector<double>(
                                       e.coeffs().data(),
                                       e.coeffs().data() + e.coeffs().size())},
                  {"rows", e.coeffs().rows()},
                  {"cols", e.coeffs().cols()},
                  {"layout", "column-major"}},
                 h);
      throw;
    }
  }();

  const auto m = r.pulse.cols();
  std::vector<std::string> pulse_cols{"t"};
  for (Eigen::Index j = 0; j < m; ++j) {
    pulse_cols.push_back("omega_" + std::to_string(j + 1));
  }
  CsvTable pulse(pulse_cols);
  for (Eigen::Index l = 0; l < r.pulse.rows(); ++l) {
    auto& row = pulse.add_row();
    row << r.grid.time(static_cast<std::size_t>(l) + 1);
    for (Eigen::Index j = 0; j < m; ++j) row << r.pulse(l, j);
  }
  write_csv(c.out_dir / "pulse.csv", pulse, h);

  CsvTable trace({"iter", "phi", "grad_norm", "eps"});
  std::vector<std::string> coeff_cols{"iter", "k"};
  for (Eigen::Index j = 0; j < m; ++j) {
    coeff_cols.push_back("alpha_" + std::to_string(j + 1));
  }
  CsvTable coeffs(coeff_cols);
  for (const auto& rec : r.ascent.trace.records) {
    trace.add_row() << rec.iter << rec.fidelity << rec.grad_norm << rec.step;
    if (!rec.has_snapshot) continue;
    for (Eigen::Index k = 0; k < rec.coeffs.rows(); ++k) {
      auto& row = coeffs.add_row();
      row << rec.iter << static_cast<int>(k);
      for (Eigen::Index j = 0; j < m; ++j) row << rec.coeffs(k, j);
    }
  }
  write_csv(c.out_dir / "trace.csv", trace, h);
  write_csv(c.out_dir / "coeffs.csv", coeffs, h);

  write_json(c.out_dir / "result.json",
             {{"termination", std::string(to_string(r.ascent.reason))},
              {"phi", r.ascent.fidelity},
              {"infidelity", 1.0 - r.ascent.fidelity},
              {"iterations", r.ascent.iterations},
              {"evaluations", r.ascent.evaluations},
              {"k", r.basis.size()},
              {"orders", r.basis.orders},
              {"eigenvalues", r.basis.eigenvalues},
              {"dt", r.grid.dt()},
              {"final_unitary", to_json(r.final_unitary)},
              {"config", config_echo(c)}},
             h);
  std::cerr << "synthesize: " << to_string(r.ascent.reason) << " after "
            << r.ascent.iterations << " iterations, 1 - phi = "
            << format_double(1.0 - r.ascent.fidelity) << "\n";
  return kOk;
}

int run_grad_check(const RunConfig& c) {
  const auto& p = c.grad_check;
  const ControlSystem sys = resolve_system(p.system);
  const RandomStream root = RandomStream(c.seed).split("grad-check");
  RandomStream target_rng = root.split("target");
  RandomStream pulse_rng = root.split("pulses");
  const Operator target = haar_unitary(sys.dim(), target_rng);
  const GradientCheckReport rep = finite_difference_check(
      sys, target, static_cast<std::size_t>(p.n), p.tau, p.amplitude,
      p.samples, p.tolerance, pulse_rng);

  json entries = json::array();
  for (const auto& s : rep.samples) {
    entries.push_back({{"step", s.step},
                       {"control", s.control},
                       {"analytic", s.analytic},
                       {"numeric", s.numeric},
                       {"h", s.h},
                       {"rel_error", s.rel_error}});
  }
  write_json(c.out_dir / "grad_check.json",
             {{"system", p.system},
              {"passed", rep.passed()},
              {"worst_rel_error", rep.worst_rel_error},
              {"tolerance", rep.tolerance},
              {"samples", entries}},
             header_for(c));
  std::cerr << "grad-check: " << (rep.passed() ? "pass" : "FAIL")
            << ", worst relative error " << format_double(rep.worst_rel_error)
            << "\n";
  return rep.passed() ? kOk : kNumericalFailure;
}

json step_json(const BracketStep& s) {
  return {{"kind", s.kind == BracketStep::Kind::Probe ? "probe" : "mid"},
          {"tau", s.tau},
          {"w_effective", s.w_effective},
          {"k", s.k},
          {"fidelity", s.fidelity},
          {"success", s.success},
          {"iterations", s.iterations},
          {"restarts_used", s.restarts_used},
          {"reused", s.reused},
          {"lo", s.lo},
          {"mid", s.mid},
          {"hi", s.hi}};
}

json record_json(const SweepRecord& r) {
  json steps = json::array();
  for (const auto& s : r.audit) steps.push_back(step_json(s));
  return {{"target_id", r.target_id},
          {"seed", r.seed},
          {"w", r.w},
          {"n", r.n},
          {"f_star", r.f_star},
          {"tau_min", std::isfinite(r.tau_min) ? json(r.tau_min) : json(nullptr)},
          {"iterations", r.iterations},
          {"status", r.status},
          {"tau_lo_initial", r.tau_lo_initial},
          {"tau_min_from_stricter", r.tau_min_from_stricter},
          {"audit", steps}};
}

int run_qsl_sweep(const RunConfig& c) {
  const auto& p = c.qsl_sweep;
  const ControlSystem sys = resolve_system(p.system);
  SweepConfig sc;
  sc.targets = perfect_entangler_targets(p.targets, c.seed);
  sc.w_grid = p.w_grid;
  sc.f_stars = p.f_stars;
  sc.bracket = p.bracket;
  sc.seed = c.seed;
  sc.workers = c.workers;

  // Completion-ordered stream for monitoring; the sorted tables below are the
  // reproducible outputs.
  const fs::path stream_path = c.out_dir / "cells.jsonl";
  std::ofstream stream(stream_path, std::ios::trunc);
  if (!stream) throw std::runtime_error("cannot open " + stream_path.string());
  const auto records = sweep(sys, sc, [&](const SweepRecord& r) {
    json line = record_json(r);
    line.erase("audit");
    stream << line.dump() << "\n" << std::flush;
  });

  const ArtifactHeader h = header_for(c);
  CsvTable table({"target_id", "seed", "w", "f_star", "tau_min", "iters", "status"});
  bool partial = false;
  json audit = json::array();
  for (const auto& r : records) {
    table.add_row() << r.target_id << r.seed << r.w << r.f_star << r.tau_min
                    << r.iterations << r.status;
    partial = partial || r.status != "ok";
    audit.push_back(record_json(r));
  }
  write_csv(c.out_dir / "sweep.csv", table, h);
  write_json(c.out_dir / "audit.json", {{"records", audit}}, h);

  json fits = json::object();
  CsvTable fig({"w", "mean_tau", "std_tau", "f_star"});
  try {
    for (const auto& [f, fit] : fit_sweep(records)) {
      json pts = json::array();
      for (const auto& pt : fit.points) {
        fig.add_row() << pt.w << pt.mean << pt.stddev << f;
        pts.push_back({{"w", pt.w},
                       {"mean_tau", pt.mean},
                       {"std_tau", pt.stddev},
                       {"count", pt.count}});
      }
      fits[format_double(f)] = {
          {"a", fit.a}, {"b", fit.b}, {"residual", fit.residual}, {"points", pts}};
    }
  } catch (const std::exception& e) {
    fits["error"] = e.what();
    partial = true;
  }
  write_json(c.out_dir / "fit.json", fits, h);
  write_csv(c.out_dir / "fig5.csv", fig, h);
  return partial ? kPartialSweep : kOk;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Slepian:
      return "slepian";
    case Command::Synthesize:
      return "synthesize";
    case Command::GradCheck:
      return "grad-check";
    case Command::QslSweep:
      return "qsl-sweep";
  }
  return "slepian";
}

std::string RunConfig::resolved() const { return render(*this, true); }

std::uint64_t RunConfig::hash() const { return fnv1a(render(*this, false)); }

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Band-limited gate synthesis and speed-limit sweeps", "grafs"};
  app.set_config("--config", "", "TOML/INI file; flags override its values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(version()));

  RunConfig cfg;
  std::string out;
  app.add_option("--seed", cfg.seed, "Root RNG seed");
  app.add_option("--out", out, "Output directory")->envname("GRAFS_OUT_DIR");
  app.add_option("--workers", cfg.workers, "Worker threads for sweeps")
      ->check(CLI::PositiveNumber);

  auto subcommand = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->configurable();
    s->fallthrough();
    return s;
  };

  CLI::App* sl = subcommand("slepian", "Dump a Slepian basis");
  auto& sp = cfg.slepian;
  sl->add_option("--n", sp.n, "Sequence length")->required();
  sl->add_option("--w", sp.w, "Half bandwidth in cycles per sample")->required();
  sl->add_option("--k-max,--k_max", sp.k_max, "Number of sequences (0: 2NW)");
  sl->add_flag("--filter", sp.filter, "Drop sequences with large endpoints");
  sl->add_option("--endpoint-threshold,--endpoint_threshold",
                 sp.endpoint_threshold);

  CLI::App* sy = subcommand("synthesize", "Optimize Slepian coefficients for a gate");
  SynthFlags sf;
  sy->add_option("--preset", sf.preset,
                 "toffoli-w0.02 | toffoli-smoke | toffoli-w0.4");
  sy->add_option("--system", sf.system);
  sy->add_option("--target", sf.target);
  sy->add_option("--n", sf.n);
  sy->add_option("--w", sf.w);
  sy->add_option("--tau", sf.tau);
  sy->add_option("--k-policy,--k_policy", sf.k_policy,
                 "full | fraction:<f> | count:<k>");
  sy->add_option("--endpoint-threshold,--endpoint_threshold",
                 sf.endpoint_threshold);
  sy->add_option("--init", sf.init, "zero | uniform");
  sy->add_option("--init-spread,--init_spread", sf.init_spread);
  sy->add_option("--alpha-bound,--alpha_bound", sf.alpha_bound);
  sy->add_option("--max-iters,--max_iters", sf.max_iters);
  sy->add_option("--grad-tol,--grad_tol", sf.grad_tol);
  sy->add_option("--fid-target,--fid_target", sf.fid_target);
  sy->add_option("--memory", sf.memory);
  sy->add_option("--direction", sf.direction, "quasi-newton | steepest");
  sy->add_option("--initial-step,--initial_step", sf.initial_step);
  sy->add_option("--shrink", sf.shrink);
  sy->add_option("--sufficient-increase,--sufficient_increase",
                 sf.sufficient_increase);

  CLI::App* gc = subcommand("grad-check", "Finite-difference gradient suite");
  auto& gp = cfg.grad_check;
  gc->add_option("--system", gp.system);
  gc->add_option("--n", gp.n);
  gc->add_option("--tau", gp.tau);
  gc->add_option("--amplitude", gp.amplitude);
  gc->add_option("--samples", gp.samples);
  gc->add_option("--tolerance", gp.tolerance);

  CLI::App* qs = subcommand("qsl-sweep", "Minimal gate time versus bandwidth");
  auto& qp = cfg.qsl_sweep;
  auto& bc = qp.bracket;
  std::string basis_name = "slepian";
  qs->add_option("--system", qp.system);
  qs->add_option("--targets", qp.targets, "Number of perfect-entangler targets");
  qs->add_option("--w-grid,--w_grid", qp.w_grid)->delimiter(',');
  qs->add_option("--f-stars,--f_stars", qp.f_stars)->delimiter(',');
  qs->add_option("--n", bc.n);
  qs->add_option("--basis", basis_name, "slepian | identity");
  qs->add_option("--tau-ref,--tau_ref", bc.tau_ref);
  qs->add_option("--alpha-bound,--alpha_bound", bc.alpha_bound);
  qs->add_option("--max-iters,--max_iters", bc.max_iters);
  qs->add_option("--restarts", bc.restarts);
  qs->add_option("--init-spread,--init_spread", bc.init_spread);
  qs->add_option("--grad-tol,--grad_tol", bc.grad_tol);
  qs->add_option("--rel-tol,--rel_tol", bc.rel_tol);
  qs->add_option("--start-tau,--start_tau", bc.start_tau);
  qs->add_option("--max-doublings,--max_doublings", bc.max_doublings);
  qs->add_option("--endpoint-threshold,--endpoint_threshold",
                 bc.endpoint_threshold);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out_s, err_s;
    const int code = app.exit(e, out_s, err_s);
    throw ConfigError(out_s.str() + err_s.str(), code == 0 ? kOk : kConfigError);
  }

  try {
    if (sl->parsed()) {
      cfg.command = Command::Slepian;
      if (sp.n < 2) throw InvalidArgument("slepian: --n must be >= 2");
      if (!(sp.w > 0.0 && sp.w < 0.5)) {
        throw InvalidArgument("slepian: --w must lie in (0, 0.5)");
      }
      if (sp.k_max < 0 || sp.k_max > sp.n) {
        throw InvalidArgument("slepian: --k-max must lie in [0, n]");
      }
    } else if (sy->parsed()) {
      cfg.command = Command::Synthesize;
      cfg.synthesize = resolve_synthesis(sf, cfg.seed);
    } else if (gc->parsed()) {
      cfg.command = Command::GradCheck;
      (void)resolve_system(gp.system);
      if (gp.n < 1) throw InvalidArgument("grad-check: --n must be >= 1");
      if (!(gp.tau > 0.0)) throw InvalidArgument("grad-check: --tau must be > 0");
      if (!(gp.amplitude > 0.0)) {
        throw InvalidArgument("grad-check: --amplitude must be > 0");
      }
      if (gp.samples < 1) throw InvalidArgument("grad-check: --samples must be >= 1");
      if (!(gp.tolerance > 0.0)) {
        throw InvalidArgument("grad-check: --tolerance must be > 0");
      }
    } else {
      cfg.command = Command::QslSweep;
      bc.basis = parse_qsl_basis(basis_name);
      bc.validate();
      (void)resolve_system(qp.system);
      if (qp.targets < 1) throw InvalidArgument("qsl-sweep: --targets must be >= 1");
      for (double w : qp.w_grid) {
        if (!(w > 0.0)) throw InvalidArgument("qsl-sweep: W values must be > 0");
      }
      for (double f : qp.f_stars) {
        if (!(f > 0.0 && f < 1.0)) {
          throw InvalidArgument("qsl-sweep: F* values must lie in (0, 1)");
        }
      }
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), kConfigError);
  }

  if (out.empty()) out = kDefaultOutDir;
  cfg.out_dir = out;
  return cfg;
}

int run(const RunConfig& cfg) {
  ensure_writable(cfg.out_dir);
  write_resolved(cfg);
  switch (cfg.command) {
    case Command::Slepian:
      return run_slepian(cfg);
    case Command::Synthesize:
      return run_synthesize(cfg);
    case Command::GradCheck:
      return run_grad_check(cfg);
    case Command::QslSweep:
      return run_qsl_sweep(cfg);
  }
  return kConfigError;
}

int main_entry(int argc, char** argv) {
  RunConfig cfg;
  try {
    cfg = parse_config(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const ConfigError& e) {
    (e.exit_code() == kOk ? std::cout : std::cerr) << e.what();
    return e.exit_code();
  }
  try {
    return run(cfg);
  } catch (const InvalidArgument& e) {
    std::cerr << "grafs: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "grafs: numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "grafs: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace grafs::cli
