#include "drp/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace drp {

Halfspace::Halfspace(Point a_, double b_) : a(std::move(a_)), b(b_) {
  if (a.norm_sq() == 0.0) throw std::invalid_argument("Halfspace: a must be nonzero");
}

Box::Box(Point lo_, Point hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.dim() != hi.dim()) throw std::invalid_argument("Box: lo/hi dimension mismatch");
  for (int i = 0; i < lo.dim(); ++i)
    if (lo.at(i) > hi.at(i)) throw std::invalid_argument("Box: requires lo <= hi componentwise");
}

Ball::Ball(Point center_, double radius_) : center(std::move(center_)), radius(radius_) {
  if (radius < 0.0) throw std::invalid_argument("Ball: radius must be >= 0");
}

HalfspaceWithNonneg::HalfspaceWithNonneg(Point a_, double b_, int nonneg_index_)
    : a(std::move(a_)), b(b_), nonneg_index(nonneg_index_) {
  if (nonneg_index < 0 || nonneg_index >= a.dim())
    throw std::invalid_argument("HalfspaceWithNonneg: nonneg_index out of range");
  double rest = 0.0;
  a.for_each_nonzero([&](int j, double aj) {
    if (j != nonneg_index) rest += aj * aj;
  });
  if (rest <= 0.0)
    throw std::invalid_argument(
        "HalfspaceWithNonneg: degenerate input, a is zero off the nonneg coordinate");
}

int component_dim(const ConstraintComponent& c) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace>) return s.a.dim();
        if constexpr (std::is_same_v<T, Box>) return s.lo.dim();
        if constexpr (std::is_same_v<T, Ball>) return s.center.dim();
        if constexpr (std::is_same_v<T, HalfspaceWithNonneg>) return s.a.dim();
      },
      c);
}

namespace {

void check_dim(const ConstraintComponent& c, const Point& v) {
  if (component_dim(c) != v.dim())
    throw std::invalid_argument("project: point/component dimension mismatch");
}

Point project_halfspace(const Halfspace& h, const Point& v) {
  double g = dot(h.a, v) - h.b;
  if (g <= 0.0) return v;
  Point out = v;
  out.add_scaled(h.a, -g / h.a.norm_sq());
  return out;
}

Point project_box(const Box& box, const Point& v) {
  // clamping may turn zeros into nonzeros, so the result is dense
  // unless v is already inside
  bool inside = true;
  for (int i = 0; i < v.dim() && inside; ++i) {
    double x = v.at(i);
    inside = x >= box.lo.at(i) && x <= box.hi.at(i);
  }
  if (inside) return v;
  std::vector<double> out = v.to_dense_vector();
  for (int i = 0; i < v.dim(); ++i) out[i] = std::clamp(out[i], box.lo.at(i), box.hi.at(i));
  return Point(std::move(out));
}

Point project_ball(const Ball& ball, const Point& v) {
  Point diff = v - ball.center;
  double n = diff.norm();
  if (n <= ball.radius) return v;
  Point out = ball.center;
  out.add_scaled(diff, ball.radius / n);
  return out;
}

// Projection onto {w | <a,w> <= b, w_i >= 0}. Dispatch follows the sign
// pattern of the two residuals at v; the fully feasible region uses
// non-strict inequalities so boundary points project to themselves.
// When at least one inequality is violated, the optimum is the nearest
// feasible candidate among the three active-set restrictions:
//   only <a,w> = b, only w_i = 0, or both hyperplanes.
// Picking the closest feasible candidate is exactly the KKT solution
// for a two-constraint problem; the "both violated" region alone does
// not determine the active set.
Point project_two_halfspaces(const HalfspaceWithNonneg& c, const Point& v) {
  const int i = c.nonneg_index;
  const double resid = dot(c.a, v) - c.b;
  const double vi = v.at(i);
  if (resid <= 0.0 && vi >= 0.0) return v;  // case 1

  const double a_nsq = c.a.norm_sq();
  // sums over j != i are formed directly; subtracting a_i^2 from the
  // full norm cancels catastrophically when a_i dominates
  double rest_nsq = 0.0;  // > 0 by construction
  double rest_dot = 0.0;
  c.a.for_each_nonzero([&](int j, double aj) {
    if (j == i) return;
    rest_nsq += aj * aj;
    rest_dot += aj * v.at(j);
  });

  // feasibility slack for candidate selection only
  const double tol = 1e-12 * (1.0 + std::abs(c.b) + v.norm());

  Point best = Point::zeros(v.dim());
  double best_d = std::numeric_limits<double>::infinity();
  auto consider = [&](const Point& w) {
    double d = distance(w, v);
    if (d < best_d) {
      best_d = d;
      best = w;
    }
  };

  // single hyperplane <a,w> = b
  {
    Point w = v;
    w.add_scaled(c.a, -resid / a_nsq);
    if (w.at(i) >= -tol) consider(w);
  }
  // single hyperplane w_i = 0
  {
    Point w = v;
    w.set(i, 0.0);
    if (rest_dot - c.b <= tol) consider(w);
  }
  // both hyperplanes: theta = (sum_{j!=i} a_j v_j - b) / sum_{j!=i} a_j^2,
  // w_j = v_j - a_j theta for j != i, w_i = 0.
  {
    double theta = (rest_dot - c.b) / rest_nsq;
    Point w = v;
    w.add_scaled(c.a, -theta);
    w.set(i, 0.0);
    consider(w);  // feasible by construction (both equalities hold)
  }
  return best;
}

}  // namespace

Point project(const ConstraintComponent& c, const Point& v) {
  check_dim(c, v);
  return std::visit(
      [&](const auto& s) -> Point {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace>) return project_halfspace(s, v);
        if constexpr (std::is_same_v<T, Box>) return project_box(s, v);
        if constexpr (std::is_same_v<T, Ball>) return project_ball(s, v);
        if constexpr (std::is_same_v<T, HalfspaceWithNonneg>) return project_two_halfspaces(s, v);
      },
      c);
}

double distance(const ConstraintComponent& c, const Point& v) {
  return distance(project(c, v), v);
}

bool membership(const ConstraintComponent& c, const Point& v, double tol) {
  if (tol < 0.0) throw std::invalid_argument("membership: tol must be >= 0");
  return distance(c, v) <= tol;
}

IntersectionSet::IntersectionSet(std::vector<ConstraintComponent> comps)
    : components(std::move(comps)) {
  for (std::size_t t = 1; t < components.size(); ++t)
    if (component_dim(components[t]) != component_dim(components[0]))
      throw std::invalid_argument("IntersectionSet: mixed component dimensions");
}

int IntersectionSet::dim() const {
  return components.empty() ? 0 : component_dim(components.front());
}

bool membership(const IntersectionSet& s, const Point& v, double tol) {
  for (const auto& c : s.components)
    if (!membership(c, v, tol)) return false;
  return true;
}

IntersectionProjection project_intersection(const IntersectionSet& s, const Point& v,
                                            double tol, int max_sweeps) {
  if (s.empty()) throw std::invalid_argument("project_intersection: empty set");
  if (tol <= 0.0) throw std::invalid_argument("project_intersection: tol must be > 0");

  IntersectionProjection out;
  const std::size_t n = s.components.size();
  Point x = v;
  x.densify();
  std::vector<Point> corrections(n, Point::zeros(v.dim()));

  Point prev = x;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (std::size_t t = 0; t < n; ++t) {
      Point y = x + corrections[t];
      Point p = project(s.components[t], y);
      corrections[t] = y - p;
      x = std::move(p);
    }
    out.sweeps = sweep + 1;

    double worst = 0.0;
    for (const auto& c : s.components) worst = std::max(worst, distance(c, x));
    double moved = distance(x, prev);
    if (worst <= tol && moved <= tol) {
      out.converged = true;
      break;
    }
    prev = x;
  }
  out.point = std::move(x);
  return out;
}

double distance(const IntersectionSet& s, const Point& v, double tol, int max_sweeps) {
  if (s.components.size() == 1) return distance(s.components.front(), v);
  return distance(project_intersection(s, v, tol, max_sweeps).point, v);
}

}  // namespace drp
