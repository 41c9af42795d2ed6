#pragma once

#include <variant>
#include <vector>

#include "drp/point.hpp"

namespace drp {

// Default tolerance for membership of projected points.
inline constexpr double kProjTol = 1e-9;

// {x | <a,x> <= b}, a != 0.
struct Halfspace {
  Point a;
  double b = 0.0;
  Halfspace(Point a_, double b_);
};

// {x | lo <= x <= hi} componentwise.
struct Box {
  Point lo, hi;
  Box(Point lo_, Point hi_);
};

// {x | ||x - center|| <= radius}.
struct Ball {
  Point center;
  double radius = 0.0;
  Ball(Point center_, double radius_);
};

// {w | <a,w> <= b, w_i >= 0}. The projection splits into four regions
// depending on which of the two inequalities v violates. Requires
// sum_{j != i} a_j^2 > 0, otherwise the two-hyperplane candidate is
// undefined (degenerate input).
struct HalfspaceWithNonneg {
  Point a;
  double b = 0.0;
  int nonneg_index = 0;
  HalfspaceWithNonneg(Point a_, double b_, int nonneg_index_);
};

using ConstraintComponent = std::variant<Halfspace, Box, Ball, HalfspaceWithNonneg>;

int component_dim(const ConstraintComponent& c);

// Exact Euclidean projection onto a single component.
Point project(const ConstraintComponent& c, const Point& v);

// ||v - project(c, v)||.
double distance(const ConstraintComponent& c, const Point& v);

bool membership(const ConstraintComponent& c, const Point& v, double tol = kProjTol);

// Finite intersection of components; membership means membership in all.
struct IntersectionSet {
  std::vector<ConstraintComponent> components;

  IntersectionSet() = default;
  explicit IntersectionSet(std::vector<ConstraintComponent> comps);

  int dim() const;
  bool empty() const { return components.empty(); }
};

bool membership(const IntersectionSet& s, const Point& v, double tol = kProjTol);

struct IntersectionProjection {
  Point point;      // feasible within tol when converged
  int sweeps = 0;   // full passes over the component list
  bool converged = false;
};

// Cyclic projections with dual corrections (Dykstra-style sweeps).
// Stops when the iterate is within tol of every component and the
// sweep-to-sweep change is below tol, or when max_sweeps is exhausted
// (reported via converged=false, never fatal). Approximates the metric
// projection; treat long non-converged results as a feasibility proxy.
IntersectionProjection project_intersection(const IntersectionSet& s, const Point& v,
                                            double tol = 1e-8, int max_sweeps = 10000);

// ||v - project_intersection(s, v).point|| (approximate for >1 component).
double distance(const IntersectionSet& s, const Point& v, double tol = 1e-8,
                int max_sweeps = 10000);

}  // namespace drp
