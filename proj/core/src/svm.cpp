#include "drp/svm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "drp/rng.hpp"

namespace drp {

namespace {

[[noreturn]] void parse_fail(const std::string& name, long line_no, const std::string& what) {
  std::ostringstream os;
  os << name << ":" << line_no << ": " << what;
  throw std::runtime_error(os.str());
}

}  // namespace

Dataset parse_dataset(std::istream& is, const std::string& name) {
  Dataset ds;
  std::string line;
  long line_no = 0;
  int max_index = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line

    double label_val;
    try {
      std::size_t used = 0;
      label_val = std::stod(tok, &used);
      if (used != tok.size()) parse_fail(name, line_no, "bad label '" + tok + "'");
    } catch (const std::exception&) {
      parse_fail(name, line_no, "bad label '" + tok + "'");
    }
    if (label_val != 1.0 && label_val != -1.0)
      parse_fail(name, line_no, "label must be +1 or -1");

    std::vector<std::pair<int, double>> feats;
    while (ls >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 >= tok.size())
        parse_fail(name, line_no, "bad feature token '" + tok + "'");
      int idx;
      double val;
      try {
        std::size_t used = 0;
        idx = std::stoi(tok.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("trailing");
        val = std::stod(tok.substr(colon + 1), &used);
        if (used != tok.size() - colon - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        parse_fail(name, line_no, "bad feature token '" + tok + "'");
      }
      if (idx < 1) parse_fail(name, line_no, "feature indices are 1-based");
      feats.emplace_back(idx - 1, val);
      max_index = std::max(max_index, idx);
    }
    std::sort(feats.begin(), feats.end());
    for (std::size_t t = 1; t < feats.size(); ++t)
      if (feats[t].first == feats[t - 1].first)
        parse_fail(name, line_no, "duplicate feature index");

    Dataset::Example ex;
    ex.label = label_val > 0 ? 1 : -1;
    std::vector<int> idx;
    std::vector<double> val;
    idx.reserve(feats.size());
    val.reserve(feats.size());
    for (auto& [i, v] : feats) {
      idx.push_back(i);
      val.push_back(v);
    }
    ex.features = Point::sparse(max_index, std::move(idx), std::move(val));
    ds.examples.push_back(std::move(ex));
  }
  // pad earlier examples up to the final feature dimension
  ds.d_feat = max_index;
  for (auto& ex : ds.examples) {
    if (ex.features.dim() != ds.d_feat) {
      std::vector<int> idx;
      std::vector<double> val;
      ex.features.for_each_nonzero([&](int i, double v) {
        idx.push_back(i);
        val.push_back(v);
      });
      ex.features = Point::sparse(ds.d_feat, std::move(idx), std::move(val));
    }
  }
  return ds;
}

Dataset parse_dataset(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("parse_dataset: cannot open " + path);
  return parse_dataset(is, path);
}

void write_dataset(std::ostream& os, const Dataset& ds) {
  char buf[40];
  for (const auto& ex : ds.examples) {
    os << (ex.label > 0 ? "+1" : "-1");
    ex.features.for_each_nonzero([&](int i, double v) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      os << ' ' << (i + 1) << ':' << buf;
    });
    os << '\n';
  }
}

int SvmProblem::owner(int sample) const {
  for (std::size_t i = 0; i < partition.size(); ++i)
    if (sample >= partition[i].first && sample < partition[i].second)
      return static_cast<int>(i);
  throw std::out_of_range("SvmProblem::owner: sample out of range");
}

SvmProblem build_problem(const Dataset& ds, double C, int m, bool bias) {
  const int n = ds.n();
  if (m < 1) throw std::invalid_argument("build_problem: m must be >= 1");
  if (n < m) throw std::invalid_argument("build_problem: need at least one sample per agent");
  if (C <= 0.0) throw std::invalid_argument("build_problem: C must be > 0");

  SvmProblem p;
  p.y_dim = ds.d_feat + (bias ? 1 : 0);
  p.n = n;
  p.m = m;
  p.C = C;
  p.bias = bias;
  p.dim = p.y_dim + n;

  const int base = n / m;
  for (int i = 0; i < m; ++i) {
    int begin = i * base;
    int end = (i == m - 1) ? n : begin + base;
    p.partition.emplace_back(begin, end);
  }

  for (int i = 0; i < m; ++i) {
    auto [begin, end] = p.partition[static_cast<std::size_t>(i)];
    std::vector<ConstraintComponent> comps;
    std::vector<int> slack_coords;
    comps.reserve(static_cast<std::size_t>(end - begin));
    for (int j = begin; j < end; ++j) {
      const auto& ex = ds.examples[static_cast<std::size_t>(j)];
      // b_j <y, a_j> >= 1 - xi_j  <=>  <-b_j a_j, y> - xi_j <= -1
      std::vector<int> idx;
      std::vector<double> val;
      ex.features.for_each_nonzero([&](int c, double v) {
        idx.push_back(c);
        val.push_back(-static_cast<double>(ex.label) * v);
      });
      if (bias) {
        idx.push_back(ds.d_feat);
        val.push_back(-static_cast<double>(ex.label));
      }
      const int slack = p.y_dim + j;
      idx.push_back(slack);
      val.push_back(-1.0);
      comps.emplace_back(
          HalfspaceWithNonneg(Point::sparse(p.dim, std::move(idx), std::move(val)), -1.0, slack));
      slack_coords.push_back(slack);
    }
    p.agents.emplace_back(i, Objective::svm_local(p.dim, p.y_dim, std::move(slack_coords), C, m),
                          std::move(comps));
  }
  return p;
}

Point y_block(const Point& x, int y_dim) {
  if (y_dim > x.dim()) throw std::invalid_argument("y_block: y_dim exceeds point dimension");
  std::vector<double> y(static_cast<std::size_t>(y_dim));
  for (int i = 0; i < y_dim; ++i) y[static_cast<std::size_t>(i)] = x.at(i);
  return Point(std::move(y));
}

double accuracy(const Point& w, const Dataset& ds) {
  const bool with_bias = w.dim() == ds.d_feat + 1;
  if (!with_bias && w.dim() != ds.d_feat)
    throw std::invalid_argument("accuracy: weight dimension must be d_feat or d_feat+1");
  if (ds.n() == 0) throw std::invalid_argument("accuracy: empty dataset");
  int hits = 0;
  for (const auto& ex : ds.examples) {
    double s = 0.0;
    ex.features.for_each_nonzero([&](int i, double v) { s += v * w.at(i); });
    if (with_bias) s += w.at(ds.d_feat);
    // zero counts as a miss
    if ((s > 0.0 && ex.label > 0) || (s < 0.0 && ex.label < 0)) ++hits;
  }
  return static_cast<double>(hits) / ds.n();
}

std::pair<Dataset, Dataset> split_80_20(const Dataset& ds, std::uint64_t seed) {
  const int n = ds.n();
  if (n < 5) throw std::invalid_argument("split_80_20: need at least 5 examples");
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  StreamRng rng(seed, 0, StreamRng::Role::kShuffle);
  for (std::size_t t = order.size(); t > 1; --t)
    std::swap(order[t - 1], order[rng.below(t)]);

  const int n_test = n / 5;
  Dataset train, test;
  train.d_feat = test.d_feat = ds.d_feat;
  for (int t = 0; t < n; ++t) {
    const auto& ex = ds.examples[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])];
    (t < n_test ? test : train).examples.push_back(ex);
  }
  return {std::move(train), std::move(test)};
}

Dataset make_blobs_dataset(int n, std::uint64_t seed, double flip_fraction, double mu,
                           double sigma) {
  if (n < 1) throw std::invalid_argument("make_blobs_dataset: n must be >= 1");
  if (flip_fraction < 0.0 || flip_fraction >= 1.0)
    throw std::invalid_argument("make_blobs_dataset: flip_fraction in [0,1)");
  Dataset ds;
  ds.d_feat = 2;
  StreamRng rng(seed, 1, StreamRng::Role::kData);
  for (int j = 0; j < n; ++j) {
    int label = (j % 2 == 0) ? 1 : -1;
    double cx = label * mu, cy = label * mu;
    double x = cx + sigma * rng.normal();
    double y = cy + sigma * rng.normal();
    if (flip_fraction > 0.0 && rng.uniform01() < flip_fraction) label = -label;
    Dataset::Example ex;
    ex.label = label;
    std::vector<int> idx;
    std::vector<double> val;
    if (x != 0.0) {
      idx.push_back(0);
      val.push_back(x);
    }
    if (y != 0.0) {
      idx.push_back(1);
      val.push_back(y);
    }
    ex.features = Point::sparse(2, std::move(idx), std::move(val));
    ds.examples.push_back(std::move(ex));
  }
  return ds;
}

std::string describe_problem(const SvmProblem& p) {
  std::ostringstream os;
  os << "dim=" << p.dim << " y_dim=" << p.y_dim << " n=" << p.n << " m=" << p.m << " C=" << p.C
     << " bias=" << (p.bias ? "true" : "false") << " partition=";
  for (std::size_t i = 0; i < p.partition.size(); ++i)
    os << (i ? "," : "") << (p.partition[i].second - p.partition[i].first);
  return os.str();
}

}  // namespace drp
