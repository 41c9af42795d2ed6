#include "drp/network.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "drp/rng.hpp"

namespace drp {

namespace {

void sort_unique(EdgeList& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

void add_self_loops(EdgeList& edges, int m) {
  for (int i = 0; i < m; ++i) edges.emplace_back(i, i);
  sort_unique(edges);
}

EdgeList clique_edges(int m) {
  EdgeList edges;
  edges.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) edges.emplace_back(i, j);
  return edges;
}

EdgeList ring_edges(int m) {
  EdgeList edges;
  for (int i = 0; i < m; ++i) {
    edges.emplace_back(i, i);
    edges.emplace_back(i, (i + 1) % m);
    edges.emplace_back(i, (i + m - 1) % m);
  }
  sort_unique(edges);
  return edges;
}

// Random d-regular simple graph by the pairing model, rejected until
// simple and connected. Symmetric directed edges plus self-loops.
EdgeList regular_expander_edges(int m, int degree, std::uint64_t seed) {
  if (degree >= m - 1) return clique_edges(m);  // complete graph is the densest regular option
  if ((static_cast<long>(m) * degree) % 2 != 0)
    throw std::invalid_argument("RegularExpander: m * degree must be even");

  StreamRng rng(seed, 0xe9, StreamRng::Role::kData);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(m) * degree);
    for (int i = 0; i < m; ++i)
      for (int d = 0; d < degree; ++d) stubs.push_back(i);
    for (std::size_t t = stubs.size(); t > 1; --t)
      std::swap(stubs[t - 1], stubs[rng.below(t)]);

    EdgeList edges;
    bool simple = true;
    for (std::size_t t = 0; t + 1 < stubs.size() && simple; t += 2) {
      int u = stubs[t], v = stubs[t + 1];
      if (u == v) simple = false;
      edges.emplace_back(u, v);
      edges.emplace_back(v, u);
    }
    if (!simple) continue;
    std::size_t before = edges.size();
    sort_unique(edges);
    if (edges.size() != before) continue;  // multi-edge
    add_self_loops(edges, m);
    if (strongly_connected(edges, m)) return edges;
  }
  throw std::runtime_error("RegularExpander: failed to generate a connected simple graph");
}

}  // namespace

bool strongly_connected(const EdgeList& edges, int m) {
  if (m <= 0) return false;
  auto reachable_all = [m](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(m, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
    }
    return count == m;
  };
  std::vector<std::vector<int>> fwd(m), bwd(m);
  for (const auto& [i, j] : edges) {
    if (i < 0 || i >= m || j < 0 || j >= m)
      throw std::invalid_argument("strongly_connected: edge endpoint out of range");
    if (i != j) {
      fwd[i].push_back(j);
      bwd[j].push_back(i);
    }
  }
  return reachable_all(fwd) && reachable_all(bwd);
}

TopologySchedule::TopologySchedule(int m, Generator gen, std::uint64_t seed)
    : m_(m), gen_(std::move(gen)), seed_(seed) {
  if (m_ <= 0) throw std::invalid_argument("TopologySchedule: m must be > 0");
  if (auto* ps = std::get_if<PeriodicSequence>(&gen_)) {
    if (ps->edge_sets.empty())
      throw std::invalid_argument("PeriodicSequence: needs at least one edge set");
    if (ps->declared_q < 1) throw std::invalid_argument("PeriodicSequence: declared_q must be >= 1");
    for (auto& es : ps->edge_sets) add_self_loops(es, m_);
    q_hint_ = ps->declared_q;
    long horizon = 2L * static_cast<long>(ps->edge_sets.size()) + q_hint_;
    if (!check_q_connectivity(*this, q_hint_, horizon))
      throw std::invalid_argument("PeriodicSequence: fails the declared Q-connectivity check");
  } else {
    if (auto* re = std::get_if<RegularExpander>(&gen_)) {
      if (re->degree < 1) throw std::invalid_argument("RegularExpander: degree must be >= 1");
      fixed_edges_ = regular_expander_edges(m_, re->degree, seed_);
    } else if (std::holds_alternative<Clique>(gen_)) {
      fixed_edges_ = clique_edges(m_);
    } else {
      fixed_edges_ = ring_edges(m_);
    }
    q_hint_ = 1;
  }
}

bool TopologySchedule::time_invariant() const {
  return !std::holds_alternative<PeriodicSequence>(gen_);
}

EdgeList TopologySchedule::edges_at(long k) const {
  if (k < 0) throw std::invalid_argument("edges_at: k must be >= 0");
  if (auto* ps = std::get_if<PeriodicSequence>(&gen_))
    return ps->edge_sets[static_cast<std::size_t>(k % ps->edge_sets.size())];
  return fixed_edges_;
}

WeightMatrix metropolis_weights(const EdgeList& edges, int m) {
  if (m <= 0) throw std::invalid_argument("metropolis_weights: m must be > 0");
  std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
  for (const auto& [i, j] : edges) {
    if (i < 0 || i >= m || j < 0 || j >= m)
      throw std::invalid_argument("metropolis_weights: edge endpoint out of range");
    adj[i][j] = 1;
  }
  for (int i = 0; i < m; ++i) {
    if (!adj[i][i]) throw std::invalid_argument("metropolis_weights: missing self-loop");
    for (int j = 0; j < m; ++j)
      if (adj[i][j] != adj[j][i])
        throw std::invalid_argument("metropolis_weights: edge set must be symmetric");
  }

  std::vector<int> deg(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (j != i && adj[i][j]) ++deg[i];

  WeightMatrix W;
  W.m = m;
  W.w.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    double off = 0.0;
    for (int j = 0; j < m; ++j) {
      if (j == i || !adj[i][j]) continue;
      double wij = 1.0 / (1.0 + std::max(deg[i], deg[j]));
      W.w[static_cast<std::size_t>(i) * m + j] = wij;
      off += wij;
    }
    W.w[static_cast<std::size_t>(i) * m + i] = 1.0 - off;
  }

  double eta = 1.0;
  for (double v : W.w)
    if (v > 0.0) eta = std::min(eta, v);
  W.eta = eta;
  return W;
}

WeightCheck check_weight_matrix(const WeightMatrix& W, const EdgeList& edges, double eta,
                                double tol) {
  WeightCheck out;
  const int m = W.m;
  std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
  for (const auto& [i, j] : edges) adj[i][j] = 1;

  bool support_ok = true, row_ok = true, col_ok = true, min_ok = true;
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) {
      double v = W.at(i, j);
      row += v;
      if (v < 0.0 || (!adj[i][j] && v != 0.0)) support_ok = false;
      if (adj[i][j] && v < eta - tol) min_ok = false;
    }
    if (std::abs(row - 1.0) > tol) row_ok = false;
  }
  for (int j = 0; j < m; ++j) {
    double col = 0.0;
    for (int i = 0; i < m; ++i) col += W.at(i, j);
    if (std::abs(col - 1.0) > tol) col_ok = false;
  }

  if (!support_ok) out.violated.push_back(WeightClause::kSupport);
  if (!row_ok) out.violated.push_back(WeightClause::kRowSums);
  if (!min_ok) out.violated.push_back(WeightClause::kMinEdgeWeight);
  if (!col_ok) out.violated.push_back(WeightClause::kColSums);
  out.ok = out.violated.empty();
  return out;
}

std::string to_string(WeightClause c) {
  switch (c) {
    case WeightClause::kSupport:
      return "nonnegative entries supported on the edge set";
    case WeightClause::kRowSums:
      return "row sums equal 1";
    case WeightClause::kMinEdgeWeight:
      return "edge entries at least eta";
    case WeightClause::kColSums:
      return "column sums equal 1";
  }
  return "?";
}

bool check_q_connectivity(const TopologySchedule& sched, int Q, long horizon) {
  if (Q < 1) throw std::invalid_argument("check_q_connectivity: Q must be >= 1");
  if (horizon < Q) throw std::invalid_argument("check_q_connectivity: horizon must be >= Q");
  for (long k = 0; k + Q <= horizon; ++k) {
    EdgeList window;
    for (long l = 0; l < Q; ++l) {
      EdgeList e = sched.edges_at(k + l);
      window.insert(window.end(), e.begin(), e.end());
    }
    std::sort(window.begin(), window.end());
    window.erase(std::unique(window.begin(), window.end()), window.end());
    if (!strongly_connected(window, sched.agent_count())) return false;
  }
  return true;
}

WeightMatrix transition_product(const std::vector<WeightMatrix>& weights, long k, long s) {
  if (s < 0 || k < s || k >= static_cast<long>(weights.size()))
    throw std::out_of_range("transition_product: need 0 <= s <= k < len(weights)");
  WeightMatrix P = weights[static_cast<std::size_t>(s)];
  const int m = P.m;
  for (long t = s + 1; t <= k; ++t) {
    const WeightMatrix& W = weights[static_cast<std::size_t>(t)];
    if (W.m != m) throw std::invalid_argument("transition_product: mixed matrix sizes");
    std::vector<double> next(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int l = 0; l < m; ++l) {
        double wil = W.at(i, l);
        if (wil == 0.0) continue;
        for (int j = 0; j < m; ++j) next[static_cast<std::size_t>(i) * m + j] += wil * P.at(l, j);
      }
    P.w = std::move(next);
    P.eta = std::min(P.eta, W.eta);
  }
  return P;
}

double mixing_deviation(const WeightMatrix& P) {
  double dev = 0.0;
  const double target = 1.0 / P.m;
  for (double v : P.w) dev = std::max(dev, std::abs(v - target));
  return dev;
}

double geometric_mixing_bound(double eta, int m, int Q, long steps) {
  if (eta <= 0.0 || eta >= 1.0) throw std::invalid_argument("geometric_mixing_bound: eta in (0,1)");
  if (m < 1 || Q < 1 || steps < 0) throw std::invalid_argument("geometric_mixing_bound: bad args");
  const double base = 1.0 - eta / (4.0 * m * m);
  const double theta = 1.0 / (base * base);
  const double beta = std::pow(base, 1.0 / Q);
  return theta * std::pow(beta, static_cast<double>(steps));
}

double geometric_convolution(double beta, const std::vector<double>& gamma) {
  if (beta <= 0.0 || beta >= 1.0)
    throw std::invalid_argument("geometric_convolution: beta must be in (0,1)");
  double s = 0.0;
  for (double g : gamma) s = beta * s + g;
  return s;
}

std::string format_edges(long k, const EdgeList& edges) {
  std::ostringstream os;
  os << k << ":";
  for (std::size_t t = 0; t < edges.size(); ++t)
    os << (t == 0 ? " " : ", ") << edges[t].first << "->" << edges[t].second;
  return os.str();
}

void write_schedule(std::ostream& os, const TopologySchedule& sched, long k_begin, long k_end) {
  for (long k = k_begin; k < k_end; ++k) os << format_edges(k, sched.edges_at(k)) << "\n";
}

}  // namespace drp
