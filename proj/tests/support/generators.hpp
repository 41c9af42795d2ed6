#pragma once

// Seeded random inputs for property tests.

#include <vector>

#include "drp/constraints.hpp"
#include "drp/point.hpp"
#include "drp/rng.hpp"

namespace drp::testing {

inline Point random_dense(StreamRng& rng, int dim, double scale = 3.0) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (double& x : v) x = scale * rng.normal();
  return Point(std::move(v));
}

inline Point random_nonzero(StreamRng& rng, int dim, double scale = 1.0) {
  for (;;) {
    Point p = random_dense(rng, dim, scale);
    if (p.norm() > 1e-6) return p;
  }
}

// One random component of the requested variant (0..3); geometry scaled
// to sit near the origin.
inline ConstraintComponent random_component(StreamRng& rng, int dim, int variant) {
  switch (variant) {
    case 0:
      return Halfspace(random_nonzero(rng, dim), rng.uniform(-1.0, 2.0));
    case 1: {
      std::vector<double> lo(static_cast<std::size_t>(dim)), hi(static_cast<std::size_t>(dim));
      for (int i = 0; i < dim; ++i) {
        double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
        lo[static_cast<std::size_t>(i)] = std::min(a, b);
        hi[static_cast<std::size_t>(i)] = std::max(a, b);
      }
      return Box(Point(std::move(lo)), Point(std::move(hi)));
    }
    case 2:
      return Ball(random_dense(rng, dim, 1.0), rng.uniform(0.1, 3.0));
    default: {
      // keep at least one off-index coordinate of a non-negligible
      for (;;) {
        Point a = random_dense(rng, dim, 1.0);
        int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
        double rest = a.norm_sq() - a.at(i) * a.at(i);
        if (rest > 1e-6) return HalfspaceWithNonneg(a, rng.uniform(-1.0, 1.5), i);
      }
    }
  }
}

}  // namespace drp::testing
