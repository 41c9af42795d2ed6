#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "drp/point.hpp"

namespace drp {

struct TraceRecord {
  long k = 0;
  double objective = 0.0;          // f evaluated at the instantaneous average
  double max_disagreement = 0.0;   // max_i ||v_i - vbar||
  double max_infeasibility = 0.0;  // max_i dist(v_i, X), alternating-projection estimate
  double stepsize = 0.0;
  // both conventions for the objective curve, so either can be inspected
  double f_at_agent_max = 0.0;
  double f_at_agent_min = 0.0;
  std::vector<double> agent_accuracy;  // filled when an accuracy evaluator is wired
};

enum class RunVerdict { kConverged, kIterationCapped, kDiverged };

std::string to_string(RunVerdict v);

struct RunTrace {
  std::vector<TraceRecord> records;
  RunVerdict verdict = RunVerdict::kIterationCapped;
  long iterations = 0;    // completed iterations
  long stopped_at = -1;   // k at which the stopping rule fired, -1 otherwise
  std::string diagnostic; // populated on divergence / invariant violation
  std::vector<Point> final_x;
  // running max of ||grad f_i(v_i(k))|| over all agents and iterations;
  // empirical stand-in for a gradient bound, diagnostic only
  double observed_gradient_bound = 0.0;
};

// CSV schema: k, objective, max_disagreement, max_infeasibility, stepsize.
// Rendered with %.17g so identical runs serialize byte-identically.
void write_csv(std::ostream& os, const RunTrace& trace);
std::string to_csv(const RunTrace& trace);

// Sidecar dump of per-agent iterates, one line per (k, agent).
void write_iterates(std::ostream& os, long k, const std::vector<Point>& xs);

}  // namespace drp
