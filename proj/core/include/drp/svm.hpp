#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "drp/engine.hpp"
#include "drp/point.hpp"

namespace drp {

// Sparse labeled examples; labels are strictly +1 / -1.
struct Dataset {
  struct Example {
    Point features;  // sparse, dimension d_feat
    int label = 1;
  };
  std::vector<Example> examples;
  int d_feat = 0;

  int n() const { return static_cast<int>(examples.size()); }
};

// Text format: one example per line, "label idx:val idx:val ..." with
// 1-based feature indices. Blank lines are skipped; anything else
// malformed is rejected with its line number.
Dataset parse_dataset(const std::string& path);
Dataset parse_dataset(std::istream& is, const std::string& name = "<stream>");
void write_dataset(std::ostream& os, const Dataset& ds);

// Soft-margin linear SVM split across m agents. The decision variable
// is x = (y, xi) with y the d_feat(+bias) weight block and one slack
// coordinate per training example. Each example j contributes a
// two-halfspace component (margin inequality + xi_j >= 0) owned by a
// single agent; samples are dealt in contiguous blocks of floor(n/m)
// with the remainder going to the last agent.
struct SvmProblem {
  int dim = 0;    // y_dim + n
  int y_dim = 0;  // d_feat (+1 when bias)
  int n = 0;
  int m = 0;
  double C = 1.0;
  bool bias = true;
  std::vector<std::pair<int, int>> partition;  // per-agent [begin, end) sample ranges
  std::vector<AgentSpec> agents;

  int owner(int sample) const;
};

SvmProblem build_problem(const Dataset& ds, double C, int m, bool bias);

// Fraction of examples with sign(<y, a_j>) == b_j; a zero inner product
// counts as a miss. w must be exactly the y block (d_feat or d_feat+1
// with bias appended).
double accuracy(const Point& w, const Dataset& ds);

// Slices the y block out of a full problem iterate.
Point y_block(const Point& x, int y_dim);

// Deterministic shuffled split; the test side gets floor(n/5).
std::pair<Dataset, Dataset> split_80_20(const Dataset& ds, std::uint64_t seed);

// Seeded 2-D Gaussian blobs around (+mu, +mu) / (-mu, -mu);
// flip_fraction of labels are inverted (0 gives a separable set).
Dataset make_blobs_dataset(int n, std::uint64_t seed, double flip_fraction = 0.0,
                           double mu = 2.0, double sigma = 0.6);

// Key/value summary for logs.
std::string describe_problem(const SvmProblem& p);

}  // namespace drp
