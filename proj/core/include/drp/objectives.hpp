#pragma once

#include <optional>
#include <vector>

#include "drp/point.hpp"

namespace drp {

// Convex differentiable local objective. Two families:
//  - Quadratic: f(x) = 1/2 x'Qx + <q,x> + r with Q symmetric PSD.
//  - SvmLocal:  f(x) = (1/(2m)) ||y||^2 + C * sum_{j in slacks} xi_j over
//    x = (y, xi); the y block is the first y_dim coordinates.
class Objective {
 public:
  // Q row-major, d x d. PSD is verified with a Cholesky factorization
  // attempt (tiny diagonal jitter tolerates semidefinite inputs).
  // lipschitz: optional override; defaults to the Frobenius norm of Q,
  // a certified upper bound on the gradient Lipschitz constant.
  static Objective quadratic(int dim, std::vector<double> Q, Point q, double r,
                             std::optional<double> lipschitz = std::nullopt,
                             std::optional<double> gradient_bound = std::nullopt);

  // slack_coords: absolute coordinate indices of this agent's slacks.
  static Objective svm_local(int dim, int y_dim, std::vector<int> slack_coords, double C,
                             int agent_count);

  double value(const Point& x) const;
  Point gradient(const Point& x) const;

  int dim() const { return dim_; }
  double lipschitz() const { return lipschitz_; }
  std::optional<double> gradient_bound() const { return gradient_bound_; }

  bool is_quadratic() const { return kind_ == Kind::kQuadratic; }

 private:
  enum class Kind { kQuadratic, kSvmLocal };

  Kind kind_ = Kind::kQuadratic;
  int dim_ = 0;
  double lipschitz_ = 1.0;
  std::optional<double> gradient_bound_;

  // quadratic
  std::vector<double> Q_;
  Point q_;
  double r_ = 0.0;

  // svm
  int y_dim_ = 0;
  std::vector<int> slack_coords_;
  double C_ = 1.0;
  int agent_count_ = 1;

  friend Objective combine_objectives(const std::vector<Objective>& fs);
};

// Sum of per-agent objectives expressed again as a single Objective
// (quadratics add; SVM locals merge into the m=1 form).
Objective combine_objectives(const std::vector<Objective>& fs);

}  // namespace drp
