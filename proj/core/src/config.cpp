#include "drp/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "drp/oracles.hpp"
#include "drp/svm.hpp"

namespace drp {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& name) {
  ConfigFile cfg;
  std::istringstream is(text);
  std::string line, section;
  long line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error(name + ":" + std::to_string(line_no) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(name + ":" + std::to_string(line_no) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error(name + ":" + std::to_string(line_no) + ": empty key");
    cfg.entries_[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_string(buf.str(), path);
}

bool ConfigFile::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string ConfigFile::get(const std::string& key, const std::string& fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

long ConfigFile::get_long(const std::string& key, long fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  return std::stol(it->second);
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  return std::stod(it->second);
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::runtime_error("config: bad boolean for " + key + ": " + it->second);
}

void ConfigFile::set(const std::string& key, const std::string& value) { entries_[key] = value; }

StepsizeSchedule parse_stepsize(const std::string& text) {
  // forms: "harmonic", "harmonic:a0", "constant:alpha", "power:a0:p"
  std::vector<std::string> parts;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ':')) parts.push_back(tok);
  if (parts.empty()) throw std::runtime_error("stepsize: empty spec");
  const std::string& kind = parts[0];
  if (kind == "harmonic")
    return StepsizeSchedule::harmonic(parts.size() > 1 ? std::stod(parts[1]) : 1.0);
  if (kind == "constant")
    return StepsizeSchedule::constant(parts.size() > 1 ? std::stod(parts[1]) : 0.01);
  if (kind == "power")
    return StepsizeSchedule::power_law(parts.size() > 1 ? std::stod(parts[1]) : 1.0,
                                       parts.size() > 2 ? std::stod(parts[2]) : 0.75);
  throw std::runtime_error("stepsize: unknown kind " + kind);
}

TopologySchedule parse_topology(const std::string& text, int m, std::uint64_t seed) {
  if (text == "clique") return TopologySchedule(m, TopologySchedule::Clique{}, seed);
  if (text == "ring") return TopologySchedule(m, TopologySchedule::Ring{}, seed);
  if (text == "expander3")
    return TopologySchedule(m, TopologySchedule::RegularExpander{3}, seed);
  if (text.rfind("expander:", 0) == 0)
    return TopologySchedule(m, TopologySchedule::RegularExpander{std::stoi(text.substr(9))}, seed);
  throw std::runtime_error("topology: unknown kind " + text);
}

StoppingRule parse_stopping(const std::string& text) {
  if (text == "max_iters") return MaxIters{};
  if (text.rfind("max_iters:", 0) == 0) return MaxIters{std::stol(text.substr(10))};
  if (text == "rel_objective") return RelativeObjective{};
  if (text.rfind("rel_objective:", 0) == 0) {
    RelativeObjective ro;
    ro.theta = std::stod(text.substr(14));
    ro.theta_abs = ro.theta;
    return ro;
  }
  if (text.rfind("target_accuracy:", 0) == 0) return TargetAccuracy{std::stod(text.substr(16))};
  throw std::runtime_error("stop: unknown rule " + text);
}

AssembledRun assemble_run(const ConfigFile& cfg) {
  const std::string kind = cfg.get("problem.kind", "quadratic");
  const int m = static_cast<int>(cfg.get_long("network.agents", 4));
  const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_long("run.seed", 0));

  std::vector<AgentSpec> agents;
  AssembledRun out{.run = RunConfig{.agents = {},
                                    .schedule = TopologySchedule(
                                        std::max(1, m), TopologySchedule::Clique{}, seed)}};

  if (kind == "quadratic") {
    const int dim = static_cast<int>(cfg.get_long("problem.dim", 4));
    const int comps = static_cast<int>(cfg.get_long("problem.components_per_agent", 3));
    const auto pseed = static_cast<std::uint64_t>(cfg.get_long("problem.seed", 1));
    agents = make_quadratic_problem(dim, m, comps, pseed);
  } else if (kind == "svm" || kind == "svm_synthetic") {
    Dataset ds;
    if (kind == "svm") {
      ds = parse_dataset(cfg.get("problem.dataset", ""));
    } else {
      const int n = static_cast<int>(cfg.get_long("problem.n", 200));
      const auto pseed = static_cast<std::uint64_t>(cfg.get_long("problem.seed", 1));
      const double flip = cfg.get_double("problem.flip_fraction",
                                         cfg.get("problem.variant", "separable") == "noisy" ? 0.1
                                                                                            : 0.0);
      ds = make_blobs_dataset(n, pseed, flip);
    }
    SvmProblem problem =
        build_problem(ds, cfg.get_double("problem.C", 1.0), m, cfg.get_bool("problem.bias", true));
    agents = std::move(problem.agents);
    out.is_svm = true;
    out.y_dim = problem.y_dim;
  } else {
    throw std::runtime_error("problem: unknown kind " + kind);
  }

  out.run.agents = std::move(agents);
  out.run.schedule = parse_topology(cfg.get("network.topology", "clique"), m, seed);
  {
    const std::string sk = cfg.get("stepsize.kind", "harmonic");
    const double a0 = cfg.get_double("stepsize.a0", 1.0);
    if (sk == "harmonic")
      out.run.stepsize = StepsizeSchedule::harmonic(a0);
    else if (sk == "constant")
      out.run.stepsize = StepsizeSchedule::constant(a0);
    else if (sk == "power")
      out.run.stepsize = StepsizeSchedule::power_law(a0, cfg.get_double("stepsize.p", 0.75));
    else
      throw std::runtime_error("stepsize.kind: unknown kind " + sk);
  }
  out.run.batch_size = static_cast<int>(cfg.get_long("run.batch", 1));
  out.run.max_iters = cfg.get_long("run.max_iters", 20000);
  out.run.seed = seed;
  out.run.cadence = cfg.get_long("run.cadence", 1);
  out.run.workers = static_cast<int>(cfg.get_long("run.workers", 1));
  if (cfg.has("run.stop")) out.requested_stop = parse_stopping(cfg.get("run.stop", ""));
  out.out_path = cfg.get("run.out", "");
  out.iterate_dump_path = cfg.get("run.dump_iterates", "");
  const std::string init = cfg.get("run.init", "normal");
  if (init == "zero")
    out.run.init = InitKind::kZero;
  else if (init == "normal")
    out.run.init = InitKind::kStandardNormal;
  else
    throw std::runtime_error("run.init: unknown kind " + init);
  out.run.init_scale = cfg.get_double("run.init_scale", 1.0);
  return out;
}

}  // namespace drp
