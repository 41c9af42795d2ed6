// Command-line front end: run simulations from config files, audit
// configurations against the algorithm's standing assumptions, solve
// reference problems, and drive the distributed SVM experiments.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "drp/config.hpp"
#include "drp/engine.hpp"
#include "drp/oracles.hpp"
#include "drp/svm.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<long> seed;
  std::optional<int> agents;
  std::optional<int> batch;
  std::optional<std::string> topology;
  std::optional<std::string> stepsize;
  std::optional<long> max_iters;
  std::string out_path;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config_path, "config file (key=value with [section]s)");
  sub->add_option("--set", f.overrides, "override config entries, section.key=value")
      ->type_name("KEY=VAL");
  sub->add_option("--seed", f.seed, "master seed");
  sub->add_option("--agents", f.agents, "number of agents m");
  sub->add_option("--batch", f.batch, "projections per iteration b");
  sub->add_option("--topology", f.topology, "clique | ring | expander3 | expander:<d>");
  sub->add_option("--stepsize", f.stepsize, "harmonic:a0 | constant:a | power:a0:p");
  sub->add_option("--max-iters", f.max_iters, "iteration cap");
  sub->add_option("--out", f.out_path, "trace CSV path");
}

drp::ConfigFile load_config(const CommonFlags& f) {
  drp::ConfigFile cfg =
      f.config_path.empty() ? drp::ConfigFile::parse_string("") : drp::ConfigFile::parse_file(f.config_path);
  for (const auto& ov : f.overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos) throw std::runtime_error("--set expects section.key=value");
    cfg.set(ov.substr(0, eq), ov.substr(eq + 1));
  }
  if (f.seed) cfg.set("run.seed", std::to_string(*f.seed));
  if (f.agents) cfg.set("network.agents", std::to_string(*f.agents));
  if (f.batch) cfg.set("run.batch", std::to_string(*f.batch));
  if (f.topology) cfg.set("network.topology", *f.topology);
  if (f.stepsize) {
    // split "kind:a0[:p]" into the section entries
    std::istringstream is(*f.stepsize);
    std::string kind, a0, p;
    std::getline(is, kind, ':');
    std::getline(is, a0, ':');
    std::getline(is, p, ':');
    cfg.set("stepsize.kind", kind);
    if (!a0.empty()) cfg.set("stepsize.a0", a0);
    if (!p.empty()) cfg.set("stepsize.p", p);
  }
  if (f.max_iters) cfg.set("run.max_iters", std::to_string(*f.max_iters));
  if (!f.out_path.empty()) cfg.set("run.out", f.out_path);
  return cfg;
}

void write_trace_outputs(const drp::AssembledRun& ar, const drp::RunTrace& trace) {
  if (!ar.out_path.empty()) {
    std::ofstream os(ar.out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + ar.out_path);
    drp::write_csv(os, trace);
  } else {
    drp::write_csv(std::cout, trace);
  }
}

int cmd_run(const CommonFlags& flags) {
  drp::ConfigFile cfg = load_config(flags);
  drp::AssembledRun ar = drp::assemble_run(cfg);
  if (ar.requested_stop) ar.run.stop = *ar.requested_stop;

  if (!ar.run.stepsize.convergence_conforming())
    std::cerr << "warning: stepsize (" << ar.run.stepsize.describe()
              << ") violates the diminishing/square-summable conditions\n";

  std::ofstream dump;
  if (!ar.iterate_dump_path.empty()) {
    dump.open(ar.iterate_dump_path, std::ios::binary);
    if (!dump) throw std::runtime_error("cannot open " + ar.iterate_dump_path);
    long cadence = ar.run.cadence;
    ar.run.observer = [&dump, cadence](long k, const std::vector<drp::Point>&,
                                       const std::vector<drp::Point>& x_next) {
      if (k % cadence == 0) drp::write_iterates(dump, k, x_next);
    };
  }

  drp::RunTrace trace = drp::run(ar.run);
  write_trace_outputs(ar, trace);
  std::cerr << "verdict: " << drp::to_string(trace.verdict) << " after " << trace.iterations
            << " iterations";
  if (trace.stopped_at >= 0) std::cerr << " (stop rule fired at k=" << trace.stopped_at << ")";
  if (!trace.diagnostic.empty()) std::cerr << "; " << trace.diagnostic;
  std::cerr << "\nobserved gradient bound: " << trace.observed_gradient_bound << "\n";
  return trace.verdict == drp::RunVerdict::kDiverged ? 2 : 0;
}

int cmd_check(const CommonFlags& flags, bool strict, long horizon_override) {
  drp::ConfigFile cfg = load_config(flags);
  drp::AssembledRun ar = drp::assemble_run(cfg);
  const auto& sched = ar.run.schedule;
  const int m = sched.agent_count();
  bool all_ok = true;

  const int Q = sched.q_hint();
  const long horizon = horizon_override > 0 ? horizon_override : 10L * Q;
  bool conn = drp::check_q_connectivity(sched, Q, horizon);
  std::cout << (conn ? "[ok]   " : "[FAIL] ") << "network connectivity: union over every window of "
            << Q << " steps strongly connected (horizon " << horizon << ")\n";
  all_ok &= conn;

  double eta = 1.0;
  bool weights_ok = true;
  std::vector<std::string> violated;
  for (long k = 0; k < horizon; ++k) {
    drp::EdgeList edges = sched.edges_at(k);
    drp::WeightMatrix W = drp::metropolis_weights(edges, m);
    eta = std::min(eta, W.eta);
    drp::WeightCheck chk = drp::check_weight_matrix(W, edges, W.eta);
    if (!chk.ok) {
      weights_ok = false;
      for (auto c : chk.violated) violated.push_back(drp::to_string(c) + " at k=" + std::to_string(k));
    }
  }
  std::cout << (weights_ok ? "[ok]   " : "[FAIL] ")
            << "mixing weights: doubly stochastic with edge support, min edge weight "
            << eta << "\n";
  for (const auto& v : violated) std::cout << "         violated: " << v << "\n";
  all_ok &= weights_ok;

  bool step_ok = ar.run.stepsize.convergence_conforming();
  std::cout << (step_ok ? "[ok]   " : "[FAIL] ") << "stepsize " << ar.run.stepsize.describe()
            << (step_ok ? " satisfies sum=inf, sum of squares<inf"
                        : " violates the diminishing/square-summable conditions")
            << "\n";
  all_ok &= step_ok;

  // mixing diagnostic: worst product deviation vs the geometric envelope
  {
    std::vector<drp::WeightMatrix> ws;
    const long steps = std::min<long>(horizon, 50);
    for (long k = 0; k < steps; ++k)
      ws.push_back(drp::metropolis_weights(sched.edges_at(k), m));
    bool bound_ok = true;
    double worst_ratio = 0.0;
    for (long k = 0; k < steps; ++k) {
      double dev = drp::mixing_deviation(drp::transition_product(ws, k, 0));
      double bound = drp::geometric_mixing_bound(eta, m, Q, k);
      worst_ratio = std::max(worst_ratio, dev / bound);
      if (dev > bound) bound_ok = false;
    }
    std::cout << (bound_ok ? "[ok]   " : "[FAIL] ")
              << "mixing rate: product deviation within the geometric envelope (worst ratio "
              << worst_ratio << ")\n";
    all_ok &= bound_ok;
  }

  // constraint families outside linear inequalities make the sampled
  // set-regularity constant empirical only; surface that
  bool all_linear = true;
  for (const auto& a : ar.run.agents)
    for (const auto& c : a.components)
      if (!std::holds_alternative<drp::Halfspace>(c) &&
          !std::holds_alternative<drp::HalfspaceWithNonneg>(c))
        all_linear = false;
  if (!all_linear)
    std::cout << "[note] non-linear components present; the set-regularity constant is not "
                 "certified, only observed\n";

  if (!all_ok && strict) return 1;
  return 0;
}

int cmd_oracle(const CommonFlags& flags, long iters) {
  drp::ConfigFile cfg = load_config(flags);
  drp::AssembledRun ar = drp::assemble_run(cfg);
  std::vector<drp::Objective> fs;
  for (const auto& a : ar.run.agents) fs.push_back(a.objective);
  drp::Objective f = drp::combine_objectives(fs);
  drp::IntersectionSet X = drp::global_intersection(ar.run.agents);
  drp::ProjectedGradientResult res = drp::projected_gradient_oracle(f, X, iters);
  std::cout << "objective " << res.objective << "\n"
            << "gradient_mapping_norm " << res.gradient_mapping_norm << "\n"
            << "iterations " << res.iterations << "\n"
            << "converged " << (res.converged ? "true" : "false") << "\n";
  return res.converged ? 0 : 3;
}

int cmd_svm(const CommonFlags& flags, const std::string& dataset_path, int n_synth,
            double flip, double C, const std::vector<int>& batches,
            const std::vector<std::string>& topologies) {
  drp::ConfigFile cfg = load_config(flags);
  const int m = static_cast<int>(cfg.get_long("network.agents", 6));
  const auto seed = static_cast<std::uint64_t>(cfg.get_long("run.seed", 0));
  const long max_iters = cfg.get_long("run.max_iters", 20000);
  const double a0 = cfg.get_double("stepsize.a0", 1.0);

  drp::Dataset full = dataset_path.empty() ? drp::make_blobs_dataset(n_synth, seed + 17, flip)
                                           : drp::parse_dataset(dataset_path);
  auto [train, test] = drp::split_80_20(full, seed);
  std::cout << "dataset n=" << full.n() << " d=" << full.d_feat << " train=" << train.n()
            << " test=" << test.n() << "\n";

  // centralized baseline fixes the accuracy target
  drp::SvmProblem central = drp::build_problem(train, C, 1, true);
  drp::RunTrace crp = drp::crp_oracle(central.agents, drp::StepsizeSchedule::harmonic(a0),
                                      drp::RelativeObjective{}, seed, max_iters);
  const double t_acc = drp::accuracy(drp::y_block(crp.final_x.front(), central.y_dim), test);
  std::cout << "crp iterations=" << crp.iterations << " t_acc=" << t_acc << "\n";

  std::cout << "m=" << m << " C=" << C << " stepsize=harmonic:" << a0 << "\n";
  std::cout << "topology  b      iterations  verdict\n";
  for (const auto& topo : topologies) {
    for (int b : batches) {
      drp::SvmProblem problem = drp::build_problem(train, C, m, true);
      const int y_dim = problem.y_dim;
      drp::RunConfig rc{.agents = std::move(problem.agents),
                        .schedule = drp::parse_topology(topo, m, seed)};
      rc.stepsize = drp::StepsizeSchedule::harmonic(a0);
      rc.batch_size = b;
      rc.max_iters = max_iters;
      rc.seed = seed;
      rc.cadence = cfg.get_long("run.cadence", 50);
      rc.stop = drp::TargetAccuracy{t_acc};
      rc.accuracy_fn = [&test, y_dim](const drp::Point& x) {
        return drp::accuracy(drp::y_block(x, y_dim), test);
      };
      drp::RunTrace trace = drp::run(rc);
      std::ostringstream iters;
      if (trace.stopped_at >= 0)
        iters << trace.stopped_at;
      else
        iters << "-";
      std::cout << topo << "  " << b << "  " << iters.str() << "  "
                << drp::to_string(trace.verdict) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed random projection optimization toolkit"};
  app.require_subcommand(1);

  CommonFlags run_flags, check_flags, oracle_flags, svm_flags;

  CLI::App* run_cmd = app.add_subcommand("run", "execute a configured simulation, emit trace CSV");
  add_common(run_cmd, run_flags);

  CLI::App* check_cmd = app.add_subcommand("check", "audit a config against the standing assumptions");
  add_common(check_cmd, check_flags);
  bool strict = false;
  long check_horizon = 0;
  check_cmd->add_flag("--strict-check", strict, "exit nonzero when an audit fails");
  check_cmd->add_option("--horizon", check_horizon, "window count to audit (default 10*Q)");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "reference projected-gradient solve");
  add_common(oracle_cmd, oracle_flags);
  long oracle_iters = 20000;
  oracle_cmd->add_option("--iters", oracle_iters, "oracle iteration cap");

  CLI::App* svm_cmd = app.add_subcommand("svm", "distributed linear SVM experiment");
  add_common(svm_cmd, svm_flags);
  std::string dataset_path;
  int n_synth = 200;
  double flip = 0.0;
  double C = 1.0;
  std::vector<int> batches{1};
  std::vector<std::string> topologies{"clique"};
  svm_cmd->add_option("--dataset", dataset_path, "sparse 'label idx:val ...' file; default bundled synthetic");
  svm_cmd->add_option("--n", n_synth, "synthetic dataset size");
  svm_cmd->add_option("--flip", flip, "synthetic label flip fraction");
  svm_cmd->add_option("--C", C, "soft-margin weight");
  svm_cmd->add_option("--batches", batches, "batch sizes to compare");
  svm_cmd->add_option("--topologies", topologies, "topologies to compare");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(run_flags);
    if (check_cmd->parsed()) return cmd_check(check_flags, strict, check_horizon);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle_flags, oracle_iters);
    if (svm_cmd->parsed())
      return cmd_svm(svm_flags, dataset_path, n_synth, flip, C, batches, topologies);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
