#include "drp/trace.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace drp {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(RunVerdict v) {
  switch (v) {
    case RunVerdict::kConverged:
      return "converged";
    case RunVerdict::kIterationCapped:
      return "iteration-capped";
    case RunVerdict::kDiverged:
      return "diverged";
  }
  return "?";
}

void write_csv(std::ostream& os, const RunTrace& trace) {
  os << "k,objective,max_disagreement,max_infeasibility,stepsize\n";
  for (const auto& r : trace.records) {
    os << r.k << ',' << fmt(r.objective) << ',' << fmt(r.max_disagreement) << ','
       << fmt(r.max_infeasibility) << ',' << fmt(r.stepsize) << '\n';
  }
}

std::string to_csv(const RunTrace& trace) {
  std::ostringstream os;
  write_csv(os, trace);
  return os.str();
}

void write_iterates(std::ostream& os, long k, const std::vector<Point>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    os << k << ',' << i;
    for (int c = 0; c < xs[i].dim(); ++c) os << ',' << fmt(xs[i].at(c));
    os << '\n';
  }
}

}  // namespace drp
