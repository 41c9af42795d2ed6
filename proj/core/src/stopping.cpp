#include "drp/stopping.hpp"

#include <algorithm>
#include <cmath>

#include "drp/trace.hpp"

namespace drp {

StopDecision evaluate_stopping(const StoppingRule& rule, const RunTrace& trace) {
  StopDecision out;
  if (std::holds_alternative<MaxIters>(rule)) {
    long cap = std::get<MaxIters>(rule).iterations;
    for (const auto& r : trace.records)
      if (r.k >= cap) {
        out.triggered = true;
        out.at_k = r.k;
        break;
      }
    return out;
  }
  if (const auto* ro = std::get_if<RelativeObjective>(&rule)) {
    for (std::size_t t = 1; t < trace.records.size(); ++t) {
      double prev = trace.records[t - 1].objective;
      double cur = trace.records[t].objective;
      double delta = std::abs(prev - cur);
      bool fire = prev > 0.0 ? (delta / prev < ro->theta) : (delta < ro->theta_abs);
      if (fire) {
        out.triggered = true;
        out.at_k = trace.records[t].k;
        break;
      }
    }
    return out;
  }
  const auto& ta = std::get<TargetAccuracy>(rule);
  for (const auto& r : trace.records) {
    if (r.agent_accuracy.empty()) continue;
    double worst = *std::min_element(r.agent_accuracy.begin(), r.agent_accuracy.end());
    if (worst >= ta.t_acc) {
      out.triggered = true;
      out.at_k = r.k;
      break;
    }
  }
  return out;
}

bool validate_stopping(const StoppingRule& rule) {
  if (const auto* mi = std::get_if<MaxIters>(&rule)) return mi->iterations >= 0;
  if (const auto* ro = std::get_if<RelativeObjective>(&rule))
    return ro->theta > 0.0 && ro->theta_abs > 0.0;
  const auto& ta = std::get<TargetAccuracy>(rule);
  return ta.t_acc > 0.0 && ta.t_acc <= 1.0;
}

}  // namespace drp
