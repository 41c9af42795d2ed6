#include "drp/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drp {

namespace {

// Plain Cholesky on A = Q + jitter*I; returns false when a pivot goes
// negative beyond roundoff, i.e. Q is not PSD.
bool cholesky_ok(const std::vector<double>& Q, int d) {
  double max_diag = 0.0;
  for (int i = 0; i < d; ++i) max_diag = std::max(max_diag, std::abs(Q[i * d + i]));
  const double jitter = 1e-12 * (1.0 + max_diag);

  std::vector<double> L(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = Q[i * d + j] + (i == j ? jitter : 0.0);
      for (int k = 0; k < j; ++k) s -= L[i * d + k] * L[j * d + k];
      if (i == j) {
        if (s <= 0.0) return false;
        L[i * d + i] = std::sqrt(s);
      } else {
        L[i * d + j] = s / L[j * d + j];
      }
    }
  }
  return true;
}

double frobenius(const std::vector<double>& Q) {
  double s = 0.0;
  for (double v : Q) s += v * v;
  return std::sqrt(s);
}

}  // namespace

Objective Objective::quadratic(int dim, std::vector<double> Q, Point q, double r,
                               std::optional<double> lipschitz,
                               std::optional<double> gradient_bound) {
  if (dim <= 0) throw std::invalid_argument("Objective::quadratic: dim must be > 0");
  if (static_cast<int>(Q.size()) != dim * dim)
    throw std::invalid_argument("Objective::quadratic: Q must be dim x dim");
  if (q.dim() != dim) throw std::invalid_argument("Objective::quadratic: q dimension mismatch");
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (std::abs(Q[i * dim + j] - Q[j * dim + i]) > 1e-12 * (1.0 + std::abs(Q[i * dim + j])))
        throw std::invalid_argument("Objective::quadratic: Q must be symmetric");
  if (!cholesky_ok(Q, dim))
    throw std::invalid_argument("Objective::quadratic: Q must be positive semidefinite");

  Objective f;
  f.kind_ = Kind::kQuadratic;
  f.dim_ = dim;
  f.Q_ = std::move(Q);
  f.q_ = std::move(q);
  f.r_ = r;
  f.lipschitz_ = lipschitz.value_or(std::max(frobenius(f.Q_), 1e-12));
  f.gradient_bound_ = gradient_bound;
  return f;
}

Objective Objective::svm_local(int dim, int y_dim, std::vector<int> slack_coords, double C,
                               int agent_count) {
  if (dim <= 0 || y_dim <= 0 || y_dim > dim)
    throw std::invalid_argument("Objective::svm_local: bad dimensions");
  if (C <= 0.0) throw std::invalid_argument("Objective::svm_local: C must be > 0");
  if (agent_count < 1) throw std::invalid_argument("Objective::svm_local: agent_count must be >= 1");
  std::sort(slack_coords.begin(), slack_coords.end());
  for (std::size_t t = 0; t < slack_coords.size(); ++t) {
    if (slack_coords[t] < y_dim || slack_coords[t] >= dim)
      throw std::invalid_argument("Objective::svm_local: slack coordinate out of range");
    if (t > 0 && slack_coords[t] == slack_coords[t - 1])
      throw std::invalid_argument("Objective::svm_local: duplicate slack coordinate");
  }

  Objective f;
  f.kind_ = Kind::kSvmLocal;
  f.dim_ = dim;
  f.y_dim_ = y_dim;
  f.slack_coords_ = std::move(slack_coords);
  f.C_ = C;
  f.agent_count_ = agent_count;
  f.lipschitz_ = 1.0 / agent_count;  // gradient is linear on the y block only
  return f;
}

double Objective::value(const Point& x) const {
  if (x.dim() != dim_) throw std::invalid_argument("Objective::value: dimension mismatch");
  if (kind_ == Kind::kQuadratic) {
    // 1/2 x'Qx + <q,x> + r, direct O(nnz(x) * d)
    double quad = 0.0;
    x.for_each_nonzero([&](int i, double xi) {
      double row = 0.0;
      x.for_each_nonzero([&](int j, double xj) { row += Q_[i * dim_ + j] * xj; });
      quad += xi * row;
    });
    return 0.5 * quad + dot(q_, x) + r_;
  }
  double ynorm_sq = 0.0;
  for (int i = 0; i < y_dim_; ++i) {
    double v = x.at(i);
    ynorm_sq += v * v;
  }
  double slack_sum = 0.0;
  for (int j : slack_coords_) slack_sum += x.at(j);
  return ynorm_sq / (2.0 * agent_count_) + C_ * slack_sum;
}

Point Objective::gradient(const Point& x) const {
  if (x.dim() != dim_) throw std::invalid_argument("Objective::gradient: dimension mismatch");
  if (kind_ == Kind::kQuadratic) {
    std::vector<double> g = q_.to_dense_vector();
    x.for_each_nonzero([&](int j, double xj) {
      for (int i = 0; i < dim_; ++i) g[i] += Q_[i * dim_ + j] * xj;
    });
    return Point(std::move(g));
  }
  // (y/m, C on slack coords, 0 elsewhere)
  std::vector<int> idx;
  std::vector<double> val;
  idx.reserve(y_dim_ + slack_coords_.size());
  val.reserve(y_dim_ + slack_coords_.size());
  const double inv_m = 1.0 / agent_count_;
  for (int i = 0; i < y_dim_; ++i) {
    double v = x.at(i);
    if (v != 0.0) {
      idx.push_back(i);
      val.push_back(v * inv_m);
    }
  }
  for (int j : slack_coords_) {
    idx.push_back(j);
    val.push_back(C_);
  }
  return Point::sparse(dim_, std::move(idx), std::move(val));
}

Objective combine_objectives(const std::vector<Objective>& fs) {
  if (fs.empty()) throw std::invalid_argument("combine_objectives: empty list");
  const int d = fs.front().dim_;
  for (const auto& f : fs)
    if (f.dim_ != d) throw std::invalid_argument("combine_objectives: dimension mismatch");

  if (fs.front().kind_ == Objective::Kind::kQuadratic) {
    std::vector<double> Q(static_cast<std::size_t>(d) * d, 0.0);
    Point q = Point::zeros(d);
    double r = 0.0;
    double lip = 0.0;
    for (const auto& f : fs) {
      if (f.kind_ != Objective::Kind::kQuadratic)
        throw std::invalid_argument("combine_objectives: mixed objective kinds");
      for (std::size_t t = 0; t < Q.size(); ++t) Q[t] += f.Q_[t];
      q.add_scaled(f.q_, 1.0);
      r += f.r_;
      lip += f.lipschitz_;
    }
    return Objective::quadratic(d, std::move(Q), std::move(q), r, lip);
  }

  // SVM locals: each contributes ||y||^2/(2m); summing m of them gives
  // ||y||^2/2, i.e. the m=1 form with the union of slack coordinates.
  const auto& first = fs.front();
  std::vector<int> slacks;
  for (const auto& f : fs) {
    if (f.kind_ != Objective::Kind::kSvmLocal || f.y_dim_ != first.y_dim_ ||
        f.C_ != first.C_ || f.agent_count_ != static_cast<int>(fs.size()))
      throw std::invalid_argument("combine_objectives: inconsistent svm locals");
    slacks.insert(slacks.end(), f.slack_coords_.begin(), f.slack_coords_.end());
  }
  return Objective::svm_local(d, first.y_dim_, std::move(slacks), first.C_, 1);
}

}  // namespace drp
