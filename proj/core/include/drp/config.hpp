#pragma once

#include <map>
#include <optional>
#include <string>

#include "drp/engine.hpp"

namespace drp {

// Flat key=value text with [section] headers; '#' starts a comment.
// Keys are addressed as "section.key".
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text, const std::string& name = "<string>");

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  long get_long(const std::string& key, long fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

  // overrides from the command line ("section.key=value")
  void set(const std::string& key, const std::string& value);

 private:
  std::map<std::string, std::string> entries_;
};

// Problem assembled from a config: either a seeded quadratic consensus
// instance or an SVM built from a dataset file / synthetic blobs.
struct AssembledRun {
  RunConfig run;
  // populated for svm problems
  bool is_svm = false;
  int y_dim = 0;
  std::optional<StoppingRule> requested_stop;
  std::string out_path;
  std::string iterate_dump_path;
};

// Builds engine configuration plus problem-specific wiring from a
// parsed config. Defaults: a0=1, batch=1, cadence=1, max_iters=20000,
// topology=clique, stepsize=harmonic.
AssembledRun assemble_run(const ConfigFile& cfg);

StepsizeSchedule parse_stepsize(const std::string& text);
TopologySchedule parse_topology(const std::string& text, int m, std::uint64_t seed);
StoppingRule parse_stopping(const std::string& text);

}  // namespace drp
