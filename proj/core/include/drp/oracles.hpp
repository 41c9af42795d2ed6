#pragma once

#include <cstdint>
#include <vector>

#include "drp/engine.hpp"

namespace drp {

// m=1 specialization of the engine: one agent holding the combined
// objective and every component, sampled uniformly. Used to calibrate
// accuracy targets and as a convergence baseline.
RunTrace crp_oracle(const std::vector<AgentSpec>& agents, const StepsizeSchedule& stepsize,
                    const StoppingRule& stop, std::uint64_t seed, long max_iters = 20000,
                    std::function<double(const Point&)> accuracy_fn = {},
                    std::optional<Point> x0 = std::nullopt);

struct ProjectedGradientResult {
  Point minimizer;
  double objective = 0.0;
  double gradient_mapping_norm = 0.0;  // ||x - P_X(x - alpha grad f)|| / alpha at the end
  long iterations = 0;
  bool converged = false;  // gradient mapping below tol
};

// Reference solver: x <- P_X(x - alpha_k grad f(x)) with the
// intersection projection computed to high accuracy each step. Only
// meaningful where that projection is reliable (small component lists).
ProjectedGradientResult projected_gradient_oracle(const Objective& f, const IntersectionSet& X,
                                                  const StepsizeSchedule& stepsize, long iters,
                                                  Point x0, double tol = 1e-10);

// Convenience: constant 1/L schedule, zero start.
ProjectedGradientResult projected_gradient_oracle(const Objective& f, const IntersectionSet& X,
                                                  long iters, double tol = 1e-10);

// Seeded quadratic consensus instance: strongly convex quadratics with
// per-agent minimizers scattered around an interior point of the
// feasible set; each agent holds `components_per_agent` halfspace/ball
// components that all contain a ball around that point.
std::vector<AgentSpec> make_quadratic_problem(int dim, int m, int components_per_agent,
                                              std::uint64_t seed);

}  // namespace drp
