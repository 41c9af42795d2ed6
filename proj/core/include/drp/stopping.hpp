#pragma once

#include <variant>

namespace drp {

struct RunTrace;

// Plain iteration cap.
struct MaxIters {
  long iterations = 20000;
};

// Stops once |f(k-1) - f(k)| / f(k-1) < theta between consecutive
// objective evaluations; falls back to the absolute test |df| < theta_abs
// when f(k-1) is not positive.
struct RelativeObjective {
  double theta = 0.001;
  double theta_abs = 0.001;
};

// Stops once every agent's test accuracy reaches t_acc.
struct TargetAccuracy {
  double t_acc = 0.95;
};

using StoppingRule = std::variant<MaxIters, RelativeObjective, TargetAccuracy>;

struct StopDecision {
  bool triggered = false;
  long at_k = -1;  // trace record index k where the rule first fires
};

// Post-hoc evaluation over a recorded trace (cadence-1 traces reproduce
// the engine's online decision exactly).
StopDecision evaluate_stopping(const StoppingRule& rule, const RunTrace& trace);

bool validate_stopping(const StoppingRule& rule);

}  // namespace drp
