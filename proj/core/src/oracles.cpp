#include "drp/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "drp/rng.hpp"

namespace drp {

RunTrace crp_oracle(const std::vector<AgentSpec>& agents, const StepsizeSchedule& stepsize,
                    const StoppingRule& stop, std::uint64_t seed, long max_iters,
                    std::function<double(const Point&)> accuracy_fn, std::optional<Point> x0) {
  if (agents.empty()) throw std::invalid_argument("crp_oracle: no agents");
  std::vector<Objective> fs;
  std::vector<ConstraintComponent> comps;
  for (const auto& a : agents) {
    fs.push_back(a.objective);
    comps.insert(comps.end(), a.components.begin(), a.components.end());
  }
  AgentSpec single(0, combine_objectives(fs), std::move(comps));

  RunConfig cfg{.agents = {std::move(single)},
                .schedule = TopologySchedule(1, TopologySchedule::Clique{}, seed)};
  cfg.stepsize = stepsize;
  cfg.max_iters = max_iters;
  cfg.seed = seed;
  cfg.stop = stop;
  cfg.accuracy_fn = std::move(accuracy_fn);
  if (x0) {
    cfg.init = InitKind::kGiven;
    cfg.init_points = {std::move(*x0)};
  }
  return run(cfg);
}

ProjectedGradientResult projected_gradient_oracle(const Objective& f, const IntersectionSet& X,
                                                  const StepsizeSchedule& stepsize, long iters,
                                                  Point x0, double tol) {
  if (X.empty()) throw std::invalid_argument("projected_gradient_oracle: empty set");
  if (x0.dim() != f.dim())
    throw std::invalid_argument("projected_gradient_oracle: start dimension mismatch");

  ProjectedGradientResult out;
  Point x = std::move(x0);
  x.densify();
  double alpha = stepsize.at(0);
  for (long k = 0; k < iters; ++k) {
    alpha = stepsize.at(k);
    Point step = x;
    step.add_scaled(f.gradient(x), -alpha);
    Point next = project_intersection(X, step, 1e-12, 20000).point;
    double mapping = distance(next, x) / alpha;
    x = std::move(next);
    out.iterations = k + 1;
    if (mapping <= tol) {
      out.converged = true;
      break;
    }
  }
  {
    Point step = x;
    step.add_scaled(f.gradient(x), -alpha);
    Point next = project_intersection(X, step, 1e-12, 20000).point;
    out.gradient_mapping_norm = distance(next, x) / alpha;
  }
  out.objective = f.value(x);
  out.minimizer = std::move(x);
  return out;
}

ProjectedGradientResult projected_gradient_oracle(const Objective& f, const IntersectionSet& X,
                                                  long iters, double tol) {
  return projected_gradient_oracle(f, X, StepsizeSchedule::constant(1.0 / f.lipschitz()), iters,
                                   Point::zeros(f.dim()), tol);
}

std::vector<AgentSpec> make_quadratic_problem(int dim, int m, int components_per_agent,
                                              std::uint64_t seed) {
  if (dim < 1 || m < 1 || components_per_agent < 1)
    throw std::invalid_argument("make_quadratic_problem: bad sizes");

  StreamRng rng(seed, 0x9a, StreamRng::Role::kData);

  // interior anchor the whole feasible set is built around
  std::vector<double> anchor(static_cast<std::size_t>(dim));
  for (double& v : anchor) v = rng.uniform(-1.0, 1.0);
  Point anchor_pt(anchor);
  const double margin = 0.5;

  std::vector<AgentSpec> agents;
  agents.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    // Q = R'R scaled into [0.5, 2] spectrum-ish, kept well conditioned
    std::vector<double> R(static_cast<std::size_t>(dim) * dim);
    for (double& v : R) v = rng.normal() / std::sqrt(static_cast<double>(dim));
    std::vector<double> Q(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c <= r; ++c) {
        double s = 0.0;
        for (int t = 0; t < dim; ++t) s += R[t * dim + r] * R[t * dim + c];
        s *= 0.5;
        if (r == c) s += 0.75;
        Q[r * dim + c] = s;
        Q[c * dim + r] = s;
      }

    // per-agent minimizer near the anchor keeps gradients small at the
    // consensus point, which is what bounds the late-run disagreement
    std::vector<double> target = anchor;
    for (double& v : target) v += 0.2 * rng.normal();
    // f_i(x) = 1/2 (x - t)'Q(x - t) + 1, i.e. q = -Qt, r = 1/2 t'Qt + 1
    std::vector<double> qv(static_cast<std::size_t>(dim), 0.0);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) qv[static_cast<std::size_t>(r)] -= Q[r * dim + c] * target[c];
    Point target_pt(target);
    Point q(std::move(qv));
    double r_const = 1.0 - 0.5 * dot(q, target_pt);

    std::vector<ConstraintComponent> comps;
    for (int c = 0; c < components_per_agent; ++c) {
      if (rng.uniform01() < 0.5) {
        // halfspace containing anchor with slack
        std::vector<double> a(static_cast<std::size_t>(dim));
        for (double& v : a) v = rng.normal();
        Point an(a);
        double b = dot(an, anchor_pt) + margin * (0.5 + rng.uniform01());
        comps.emplace_back(Halfspace(std::move(an), b));
      } else {
        std::vector<double> c0(static_cast<std::size_t>(dim));
        for (double& v : c0) v = rng.normal();
        Point center(c0);
        double radius = distance(center, anchor_pt) + margin * (1.0 + rng.uniform01());
        comps.emplace_back(Ball(std::move(center), radius));
      }
    }
    agents.emplace_back(i, Objective::quadratic(dim, std::move(Q), std::move(q), r_const),
                        std::move(comps));
  }
  return agents;
}

}  // namespace drp
