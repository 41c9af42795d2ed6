#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "drp/constraints.hpp"
#include "drp/network.hpp"
#include "drp/objectives.hpp"
#include "drp/point.hpp"
#include "drp/rng.hpp"
#include "drp/stopping.hpp"
#include "drp/trace.hpp"

namespace drp {

// One agent: private objective, private constraint components, and the
// sampling distribution over those components (strictly positive).
struct AgentSpec {
  int id = 0;
  Objective objective;
  std::vector<ConstraintComponent> components;
  std::vector<double> sampling;  // empty means uniform

  AgentSpec(int id_, Objective objective_, std::vector<ConstraintComponent> components_,
            std::vector<double> sampling_ = {});
};

class StepsizeSchedule {
 public:
  static StepsizeSchedule harmonic(double a0);          // a0 / (k+1)
  static StepsizeSchedule constant(double alpha);       // alpha
  static StepsizeSchedule power_law(double a0, double p);  // a0 / (k+1)^p

  double at(long k) const;
  // True when sum alpha_k = inf and sum alpha_k^2 < inf, the conditions
  // the convergence guarantee needs. Constant steps are allowed for
  // experimentation but flagged.
  bool convergence_conforming() const;
  std::string describe() const;

 private:
  enum class Kind { kHarmonic, kConstant, kPowerLaw };
  Kind kind_ = Kind::kHarmonic;
  double a0_ = 1.0;
  double p_ = 1.0;
};

enum class InitKind { kStandardNormal, kZero, kGiven };

struct RunConfig {
  std::vector<AgentSpec> agents;
  TopologySchedule schedule;
  StepsizeSchedule stepsize = StepsizeSchedule::harmonic(1.0);
  int batch_size = 1;
  long max_iters = 20000;
  std::uint64_t seed = 0;
  long cadence = 1;   // record metrics every `cadence` iterations
  int workers = 1;    // per-iteration agent parallelism; trace-invariant

  InitKind init = InitKind::kStandardNormal;
  double init_scale = 1.0;
  std::vector<Point> init_points;  // used when init == kGiven

  std::optional<StoppingRule> stop;            // checked every iteration
  std::function<double(const Point&)> accuracy_fn;  // required by TargetAccuracy

  bool check_step_feasibility = true;   // assert x(k+1) in the sampled component
  double divergence_norm = 1e12;        // abort when ||x_i|| exceeds this
  std::optional<Point> feasible_reference;  // enables the projection-chain assertion
  double infeasibility_tol = 1e-8;      // alternating-projection tolerance for dist(v, X)
  int infeasibility_max_sweeps = 2000;

  // Called after each iteration with (k, v(k), x(k+1)); test hook.
  std::function<void(long, const std::vector<Point>&, const std::vector<Point>&)> observer;
};

// v_i = sum_j W_ij x_j for every agent.
std::vector<Point> mix(const WeightMatrix& W, const std::vector<Point>& xs);
Point mix_one(const WeightMatrix& W, int i, const std::vector<Point>& xs);

// Draws a component index from the agent's sampling distribution.
int sample_component(const AgentSpec& agent, StreamRng& rng);

// x+ = project onto component omega of (v - alpha * grad f(v)).
Point drp_step(const Objective& f, std::span<const ConstraintComponent> components,
               const Point& v, double alpha, int omega);

// psi^0 = v - alpha grad f(v); psi^r = project(component omega_r, psi^{r-1});
// returns psi^b. With one index this is exactly drp_step. chain, when
// non-null, receives psi^0..psi^b.
Point minibatch_step(const Objective& f, std::span<const ConstraintComponent> components,
                     const Point& v, double alpha, std::span<const int> omegas,
                     std::vector<Point>* chain = nullptr);

// The projection cascade alone, starting from an already-formed psi^0.
Point minibatch_project(std::span<const ConstraintComponent> components, Point psi0,
                        std::span<const int> omegas, std::vector<Point>* chain = nullptr);

// Full loop: for k = 0..max_iters-1 build W(k), mix, sample a batch per
// agent, step; metrics recorded at the cadence and always at the final
// state (whose v comes from one extra mixing pass). Bit-reproducible in
// (config, seed) for any worker count.
RunTrace run(const RunConfig& config);

// Global feasible set: every component of every agent.
IntersectionSet global_intersection(const std::vector<AgentSpec>& agents);

}  // namespace drp
