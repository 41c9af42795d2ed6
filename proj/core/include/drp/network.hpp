#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace drp {

// Directed edge (i, j): agent i receives from agent j at time k.
using Edge = std::pair<int, int>;
using EdgeList = std::vector<Edge>;  // sorted, unique

// m x m mixing weights for one time step.
struct WeightMatrix {
  int m = 0;
  std::vector<double> w;  // row-major
  double eta = 0.0;       // min positive entry

  double at(int i, int j) const { return w[static_cast<std::size_t>(i) * m + j]; }
};

// One clause of the doubly-stochasticity requirements; used by audits
// to report exactly which property a matrix violates.
enum class WeightClause {
  kSupport,       // nonnegative, zero off the edge set
  kRowSums,       // every row sums to 1
  kMinEdgeWeight, // entries on edges >= eta
  kColSums,       // every column sums to 1
};

struct WeightCheck {
  bool ok = true;
  std::vector<WeightClause> violated;
};

WeightCheck check_weight_matrix(const WeightMatrix& W, const EdgeList& edges, double eta,
                                double tol = 1e-12);
std::string to_string(WeightClause c);

// Time-varying topology schedule. Every E(k) contains all self-loops.
// Generators are deterministic in (m, seed, k).
class TopologySchedule {
 public:
  struct Clique {};
  struct Ring {};
  struct RegularExpander {
    int degree = 3;
  };
  struct PeriodicSequence {
    std::vector<EdgeList> edge_sets;  // self-loops added automatically
    int declared_q = 1;               // validated at construction
  };
  using Generator = std::variant<Clique, Ring, RegularExpander, PeriodicSequence>;

  TopologySchedule(int m, Generator gen, std::uint64_t seed = 0);

  EdgeList edges_at(long k) const;
  int agent_count() const { return m_; }
  std::uint64_t seed() const { return seed_; }
  // connectivity window the schedule is expected to satisfy
  int q_hint() const { return q_hint_; }
  bool time_invariant() const;

 private:
  int m_ = 0;
  Generator gen_;
  std::uint64_t seed_ = 0;
  int q_hint_ = 1;
  EdgeList fixed_edges_;  // cached for time-invariant generators
};

// Metropolis rule on a symmetric self-looped edge set:
// W_ij = 1/(1 + max(deg_i, deg_j)) for adjacent i != j,
// W_ii = 1 - sum_{j != i} W_ij. Degrees exclude the self-loop.
WeightMatrix metropolis_weights(const EdgeList& edges, int m);

// True iff the union graph over [k, k+Q-1] is strongly connected for
// every window start k in [0, horizon-Q].
bool check_q_connectivity(const TopologySchedule& sched, int Q, long horizon);
bool strongly_connected(const EdgeList& edges, int m);

// Left product W(k) W(k-1) ... W(s); weights[t] holds W(t).
WeightMatrix transition_product(const std::vector<WeightMatrix>& weights, long k, long s);

// max_ij |P_ij - 1/m|, the distance of a product from perfect mixing.
double mixing_deviation(const WeightMatrix& P);

// theta * beta^steps with theta = (1 - eta/(4 m^2))^-2 and
// beta = (1 - eta/(4 m^2))^(1/Q): the geometric envelope that valid
// schedules' products must stay under.
double geometric_mixing_bound(double eta, int m, int Q, long steps);

// Partial convolution sum_{l=0..K} beta^(K-l) gamma(l) at K = len-1;
// tends to (lim gamma)/(1-beta).
double geometric_convolution(double beta, const std::vector<double>& gamma);

// Line-oriented serialization: one line per time step,
// "k: i->j, i->j, ...".
void write_schedule(std::ostream& os, const TopologySchedule& sched, long k_begin, long k_end);
std::string format_edges(long k, const EdgeList& edges);

}  // namespace drp
