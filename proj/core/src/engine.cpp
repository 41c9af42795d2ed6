#include "drp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace drp {

AgentSpec::AgentSpec(int id_, Objective objective_, std::vector<ConstraintComponent> components_,
                     std::vector<double> sampling_)
    : id(id_),
      objective(std::move(objective_)),
      components(std::move(components_)),
      sampling(std::move(sampling_)) {
  if (components.empty()) throw std::invalid_argument("AgentSpec: components must be nonempty");
  for (const auto& c : components)
    if (component_dim(c) != objective.dim())
      throw std::invalid_argument("AgentSpec: component/objective dimension mismatch");
  if (sampling.empty()) {
    sampling.assign(components.size(), 1.0 / static_cast<double>(components.size()));
  } else {
    if (sampling.size() != components.size())
      throw std::invalid_argument("AgentSpec: sampling length mismatch");
    double sum = 0.0;
    for (double p : sampling) {
      if (p <= 0.0) throw std::invalid_argument("AgentSpec: sampling must be strictly positive");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("AgentSpec: sampling must sum to 1");
  }
}

StepsizeSchedule StepsizeSchedule::harmonic(double a0) {
  if (a0 <= 0.0) throw std::invalid_argument("StepsizeSchedule: a0 must be > 0");
  StepsizeSchedule s;
  s.kind_ = Kind::kHarmonic;
  s.a0_ = a0;
  return s;
}

StepsizeSchedule StepsizeSchedule::constant(double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("StepsizeSchedule: alpha must be > 0");
  StepsizeSchedule s;
  s.kind_ = Kind::kConstant;
  s.a0_ = alpha;
  return s;
}

StepsizeSchedule StepsizeSchedule::power_law(double a0, double p) {
  if (a0 <= 0.0 || p <= 0.0) throw std::invalid_argument("StepsizeSchedule: a0, p must be > 0");
  StepsizeSchedule s;
  s.kind_ = Kind::kPowerLaw;
  s.a0_ = a0;
  s.p_ = p;
  return s;
}

double StepsizeSchedule::at(long k) const {
  switch (kind_) {
    case Kind::kHarmonic:
      return a0_ / static_cast<double>(k + 1);
    case Kind::kConstant:
      return a0_;
    case Kind::kPowerLaw:
      return a0_ / std::pow(static_cast<double>(k + 1), p_);
  }
  return a0_;
}

bool StepsizeSchedule::convergence_conforming() const {
  switch (kind_) {
    case Kind::kHarmonic:
      return true;
    case Kind::kConstant:
      return false;
    case Kind::kPowerLaw:
      return p_ > 0.5 && p_ <= 1.0;
  }
  return false;
}

std::string StepsizeSchedule::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kHarmonic:
      os << "harmonic a0=" << a0_;
      break;
    case Kind::kConstant:
      os << "constant alpha=" << a0_;
      break;
    case Kind::kPowerLaw:
      os << "power a0=" << a0_ << " p=" << p_;
      break;
  }
  return os.str();
}

Point mix_one(const WeightMatrix& W, int i, const std::vector<Point>& xs) {
  if (W.m != static_cast<int>(xs.size()))
    throw std::invalid_argument("mix: weight/agent count mismatch");
  Point v = Point::zeros(xs.empty() ? 0 : xs.front().dim());
  v.densify();
  for (int j = 0; j < W.m; ++j) {
    double wij = W.at(i, j);
    if (wij != 0.0) v.add_scaled(xs[j], wij);
  }
  return v;
}

std::vector<Point> mix(const WeightMatrix& W, const std::vector<Point>& xs) {
  std::vector<Point> out;
  out.reserve(xs.size());
  for (int i = 0; i < W.m; ++i) out.push_back(mix_one(W, i, xs));
  return out;
}

int sample_component(const AgentSpec& agent, StreamRng& rng) {
  if (agent.components.size() == 1) return 0;
  return rng.categorical(agent.sampling);
}

Point minibatch_project(std::span<const ConstraintComponent> components, Point psi0,
                        std::span<const int> omegas, std::vector<Point>* chain) {
  if (omegas.empty()) throw std::invalid_argument("minibatch_project: needs at least one index");
  Point psi = std::move(psi0);
  if (chain) {
    chain->clear();
    chain->push_back(psi);
  }
  for (int w : omegas) {
    if (w < 0 || w >= static_cast<int>(components.size()))
      throw std::invalid_argument("minibatch_project: component index out of range");
    psi = project(components[static_cast<std::size_t>(w)], psi);
    if (chain) chain->push_back(psi);
  }
  return psi;
}

Point minibatch_step(const Objective& f, std::span<const ConstraintComponent> components,
                     const Point& v, double alpha, std::span<const int> omegas,
                     std::vector<Point>* chain) {
  if (alpha <= 0.0) throw std::invalid_argument("minibatch_step: alpha must be > 0");
  Point psi = v;
  psi.densify();
  psi.add_scaled(f.gradient(v), -alpha);
  return minibatch_project(components, std::move(psi), omegas, chain);
}

Point drp_step(const Objective& f, std::span<const ConstraintComponent> components,
               const Point& v, double alpha, int omega) {
  const int idx[1] = {omega};
  return minibatch_step(f, components, v, alpha, idx);
}

IntersectionSet global_intersection(const std::vector<AgentSpec>& agents) {
  std::vector<ConstraintComponent> all;
  for (const auto& a : agents)
    all.insert(all.end(), a.components.begin(), a.components.end());
  return IntersectionSet(std::move(all));
}

namespace {

// Runs fn(i) for i in [0, n) on `workers` threads over contiguous
// slices. Results land in per-index slots, so scheduling cannot change
// anything observable.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct StopState {
  bool have_prev_objective = false;
  double prev_objective = 0.0;
};

// Online stopping evaluation; mirrors evaluate_stopping on a cadence-1
// trace record by record.
bool stop_fires(const StoppingRule& rule, long k, double objective,
                const std::vector<double>& accuracies, StopState& st) {
  if (std::holds_alternative<MaxIters>(rule)) {
    return k >= std::get<MaxIters>(rule).iterations;
  }
  if (const auto* ro = std::get_if<RelativeObjective>(&rule)) {
    bool fire = false;
    if (st.have_prev_objective) {
      double prev = st.prev_objective;
      double delta = std::abs(prev - objective);
      fire = prev > 0.0 ? (delta / prev < ro->theta) : (delta < ro->theta_abs);
    }
    st.have_prev_objective = true;
    st.prev_objective = objective;
    return fire;
  }
  const auto& ta = std::get<TargetAccuracy>(rule);
  if (accuracies.empty()) return false;
  double worst = *std::min_element(accuracies.begin(), accuracies.end());
  return worst >= ta.t_acc;
}

}  // namespace

RunTrace run(const RunConfig& config) {
  const int m = static_cast<int>(config.agents.size());
  if (m == 0) throw std::invalid_argument("run: no agents");
  if (config.schedule.agent_count() != m)
    throw std::invalid_argument("run: schedule/agent count mismatch");
  if (config.batch_size < 1) throw std::invalid_argument("run: batch_size must be >= 1");
  if (config.cadence < 1) throw std::invalid_argument("run: cadence must be >= 1");
  const int d = config.agents.front().objective.dim();
  for (const auto& a : config.agents)
    if (a.objective.dim() != d) throw std::invalid_argument("run: agents must share dimension");
  if (config.stop && std::holds_alternative<TargetAccuracy>(*config.stop) && !config.accuracy_fn)
    throw std::invalid_argument("run: TargetAccuracy stop needs an accuracy_fn");
  if (config.feasible_reference && config.feasible_reference->dim() != d)
    throw std::invalid_argument("run: feasible_reference dimension mismatch");

  // initial iterates
  std::vector<Point> x;
  x.reserve(static_cast<std::size_t>(m));
  switch (config.init) {
    case InitKind::kZero:
      for (int i = 0; i < m; ++i) x.push_back(Point::zeros(d).densify());
      break;
    case InitKind::kGiven:
      if (static_cast<int>(config.init_points.size()) != m)
        throw std::invalid_argument("run: init_points size mismatch");
      for (const auto& p : config.init_points) {
        if (p.dim() != d) throw std::invalid_argument("run: init point dimension mismatch");
        x.push_back(p);
        x.back().densify();
      }
      break;
    case InitKind::kStandardNormal:
      for (int i = 0; i < m; ++i) {
        StreamRng rng(config.seed, static_cast<std::uint64_t>(i), StreamRng::Role::kInit);
        std::vector<double> vals(static_cast<std::size_t>(d));
        for (double& v : vals) v = config.init_scale * rng.normal();
        x.emplace_back(std::move(vals));
      }
      break;
  }

  std::vector<StreamRng> sample_rng;
  sample_rng.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    sample_rng.emplace_back(config.seed, static_cast<std::uint64_t>(i), StreamRng::Role::kSample);

  const IntersectionSet global_set = global_intersection(config.agents);

  RunTrace trace;
  auto combined_value = [&](const Point& p) {
    double s = 0.0;
    for (const auto& a : config.agents) s += a.objective.value(p);
    return s;
  };

  auto record_metrics = [&](long k, const std::vector<Point>& v, double alpha) {
    TraceRecord rec;
    rec.k = k;
    rec.stepsize = alpha;
    Point vbar = Point::zeros(d);
    vbar.densify();
    for (const auto& vi : v) vbar.add_scaled(vi, 1.0 / m);
    rec.objective = combined_value(vbar);
    double dis = 0.0, infeas = 0.0;
    double fmax = -std::numeric_limits<double>::infinity();
    double fmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      dis = std::max(dis, distance(v[static_cast<std::size_t>(i)], vbar));
      infeas = std::max(infeas, distance(global_set, v[static_cast<std::size_t>(i)],
                                         config.infeasibility_tol,
                                         config.infeasibility_max_sweeps));
      double fi = combined_value(x[static_cast<std::size_t>(i)]);
      fmax = std::max(fmax, fi);
      fmin = std::min(fmin, fi);
    }
    rec.max_disagreement = dis;
    rec.max_infeasibility = infeas;
    rec.f_at_agent_max = fmax;
    rec.f_at_agent_min = fmin;
    if (config.accuracy_fn) {
      rec.agent_accuracy.resize(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i)
        rec.agent_accuracy[static_cast<std::size_t>(i)] =
            config.accuracy_fn(x[static_cast<std::size_t>(i)]);
    }
    trace.records.push_back(std::move(rec));
  };

  StopState stop_state;
  std::vector<Point> v(static_cast<std::size_t>(m), Point::zeros(d));
  std::vector<Point> x_next(static_cast<std::size_t>(m), Point::zeros(d));
  std::vector<std::string> step_errors(static_cast<std::size_t>(m));
  std::vector<double> grad_norm_max(static_cast<std::size_t>(m), 0.0);
  long k = 0;
  bool aborted = false;

  for (; k < config.max_iters; ++k) {
    const WeightMatrix W = metropolis_weights(config.schedule.edges_at(k), m);
    const double alpha = config.stepsize.at(k);

    parallel_for(m, config.workers, [&](int i) { v[static_cast<std::size_t>(i)] = mix_one(W, i, x); });

    // per-iteration stopping metrics (cheap; full metrics go at the cadence)
    if (config.stop) {
      double objective = 0.0;
      std::vector<double> accuracies;
      if (std::holds_alternative<RelativeObjective>(*config.stop)) {
        Point vbar = Point::zeros(d);
        vbar.densify();
        for (const auto& vi : v) vbar.add_scaled(vi, 1.0 / m);
        objective = combined_value(vbar);
      } else if (std::holds_alternative<TargetAccuracy>(*config.stop)) {
        accuracies.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
          accuracies[static_cast<std::size_t>(i)] = config.accuracy_fn(x[static_cast<std::size_t>(i)]);
      }
      if (stop_fires(*config.stop, k, objective, accuracies, stop_state)) {
        trace.verdict = std::holds_alternative<MaxIters>(*config.stop)
                            ? RunVerdict::kIterationCapped
                            : RunVerdict::kConverged;
        trace.stopped_at = k;
        break;
      }
    }

    parallel_for(m, config.workers, [&](int i) {
      const auto si = static_cast<std::size_t>(i);
      const AgentSpec& agent = config.agents[si];
      try {
        std::vector<int> omegas(static_cast<std::size_t>(config.batch_size));
        for (int& w : omegas) w = sample_component(agent, sample_rng[si]);
        std::vector<Point> chain;
        std::vector<Point>* chain_ptr = config.feasible_reference ? &chain : nullptr;
        Point grad = agent.objective.gradient(v[si]);
        grad_norm_max[si] = std::max(grad_norm_max[si], grad.norm());
        Point psi0 = v[si];
        psi0.add_scaled(grad, -alpha);
        x_next[si] = minibatch_project(agent.components, std::move(psi0), omegas, chain_ptr);
        if (config.feasible_reference) {
          double prev = std::numeric_limits<double>::infinity();
          for (const auto& psi : chain) {
            double dist_ref = distance(psi, *config.feasible_reference);
            if (dist_ref > prev + 1e-12)
              throw std::runtime_error("projection chain moved away from the feasible reference");
            prev = dist_ref;
          }
        }
        if (config.check_step_feasibility &&
            !membership(agent.components[static_cast<std::size_t>(omegas.back())], x_next[si],
                        kProjTol))
          throw std::runtime_error("iterate left the sampled component");
        if (x_next[si].norm() > config.divergence_norm)
          throw std::runtime_error("iterate norm exceeded the divergence guard");
      } catch (const std::exception& e) {
        step_errors[si] = e.what();
      }
    });

    for (int i = 0; i < m; ++i) {
      auto& err = step_errors[static_cast<std::size_t>(i)];
      if (!err.empty()) {
        std::ostringstream os;
        os << "agent " << config.agents[static_cast<std::size_t>(i)].id << " at k=" << k << ": "
           << err;
        trace.diagnostic = os.str();
        trace.verdict = RunVerdict::kDiverged;
        aborted = true;
        break;
      }
    }
    if (aborted) {
      record_metrics(k, v, alpha);
      break;
    }

    if (k % config.cadence == 0) record_metrics(k, v, alpha);
    if (config.observer) config.observer(k, v, x_next);
    x.swap(x_next);
  }

  trace.iterations = k;
  if (!aborted) {
    // final mixing pass so the closing record reports v(k)
    const WeightMatrix W = metropolis_weights(config.schedule.edges_at(k), m);
    parallel_for(m, config.workers, [&](int i) { v[static_cast<std::size_t>(i)] = mix_one(W, i, x); });
    if (trace.records.empty() || trace.records.back().k != k)
      record_metrics(k, v, config.stepsize.at(k));
    if (trace.verdict != RunVerdict::kConverged && k >= config.max_iters)
      trace.verdict = RunVerdict::kIterationCapped;
  }
  for (double g : grad_norm_max)
    trace.observed_gradient_bound = std::max(trace.observed_gradient_bound, g);
  trace.final_x = std::move(x);
  return trace;
}

}  // namespace drp
