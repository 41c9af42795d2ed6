#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "drp/objectives.hpp"
#include "drp/rng.hpp"
#include "support/generators.hpp"

using namespace drp;
using drp::testing::random_dense;

namespace {

std::vector<double> identity(int d) {
  std::vector<double> Q(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) Q[static_cast<std::size_t>(i) * d + i] = 1.0;
  return Q;
}

std::vector<double> random_psd(StreamRng& rng, int d) {
  std::vector<double> R(static_cast<std::size_t>(d) * d);
  for (double& v : R) v = rng.normal();
  std::vector<double> Q(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += R[k * d + i] * R[k * d + j];
      Q[static_cast<std::size_t>(i) * d + j] = s / d;
    }
  return Q;
}

}  // namespace

TEST_CASE("quadratic value and gradient basics") {
  Objective f = Objective::quadratic(2, identity(2), Point::zeros(2), 0.0);
  CHECK(f.value(Point(std::vector<double>{1, 2})) == doctest::Approx(2.5));
  Point g = f.gradient(Point(std::vector<double>{1, 2}));
  CHECK(approx_equal(g, Point(std::vector<double>{1, 2}), 1e-15));
}

TEST_CASE("svm local objective: slack-only value and linear gradient") {
  // dim 3 = one y coordinate + two slacks at coords 1, 2
  Objective f = Objective::svm_local(3, 1, {1, 2}, 1.0, 2);
  Point x = Point::sparse(3, {1}, {3.0});  // y = 0, xi_1 = 3
  CHECK(f.value(x) == doctest::Approx(3.0));

  Objective g2 = Objective::svm_local(4, 2, {2, 3}, 2.0, 1);
  Point y = Point(std::vector<double>{0.5, -1.0, 0.0, 7.0});
  Point g = g2.gradient(y);
  CHECK(g.at(0) == doctest::Approx(0.5));
  CHECK(g.at(1) == doctest::Approx(-1.0));
  CHECK(g.at(2) == doctest::Approx(2.0));
  CHECK(g.at(3) == doctest::Approx(2.0));
  CHECK(g2.lipschitz() == doctest::Approx(1.0));
}

TEST_CASE("quadratic value matches an independent naive summation") {
  StreamRng rng(61, 0, StreamRng::Role::kData);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(6));
    auto Q = random_psd(rng, d);
    Point q = random_dense(rng, d, 1.0);
    double r = rng.normal();
    Objective f = Objective::quadratic(d, Q, q, r);
    Point x = random_dense(rng, d);
    double direct = r;
    for (int i = 0; i < d; ++i) {
      direct += q.at(i) * x.at(i);
      for (int j = 0; j < d; ++j) direct += 0.5 * x.at(i) * Q[static_cast<std::size_t>(i) * d + j] * x.at(j);
    }
    CHECK(f.value(x) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("gradients match central finite differences") {
  StreamRng rng(71, 0, StreamRng::Role::kData);
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(5));
    Objective f = (trial % 2 == 0)
                      ? Objective::quadratic(d, random_psd(rng, d), random_dense(rng, d, 1.0), 0.0)
                      : Objective::svm_local(d, d > 2 ? d - 2 : 1,
                                             d > 2 ? std::vector<int>{d - 2, d - 1}
                                                   : std::vector<int>{1},
                                             1.5, 3);
    Point x = random_dense(rng, d);
    Point g = f.gradient(x);
    for (int i = 0; i < d; ++i) {
      Point xp = x, xm = x;
      xp.set(i, x.at(i) + h);
      xm.set(i, x.at(i) - h);
      double fd = (f.value(xp) - f.value(xm)) / (2 * h);
      double scale = std::max(1.0, std::abs(g.at(i)));
      CHECK(std::abs(g.at(i) - fd) / scale < 1e-5);
    }
  }
}

TEST_CASE("sampled gradient ratios never exceed the declared Lipschitz constant") {
  StreamRng rng(81, 0, StreamRng::Role::kData);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 3;
    Objective f = Objective::quadratic(d, random_psd(rng, d), Point::zeros(3), 0.0);
    for (int s = 0; s < 25; ++s) {
      Point x = random_dense(rng, d), y = random_dense(rng, d);
      double dxy = drp::distance(x, y);
      if (dxy < 1e-9) continue;
      double ratio = drp::distance(f.gradient(x), f.gradient(y)) / dxy;
      CHECK(ratio <= f.lipschitz() + 1e-9);
    }
  }
}

TEST_CASE("convexity spot-check on random triples") {
  StreamRng rng(91, 0, StreamRng::Role::kData);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 4;
    Objective f = (trial % 2 == 0)
                      ? Objective::quadratic(d, random_psd(rng, d), random_dense(rng, d, 1.0), 0.5)
                      : Objective::svm_local(d, 2, {2, 3}, 2.0, 2);
    Point x = random_dense(rng, d), y = random_dense(rng, d);
    double lambda = rng.uniform01();
    Point mid = lambda * x + (1.0 - lambda) * y;
    CHECK(f.value(mid) <= lambda * f.value(x) + (1 - lambda) * f.value(y) + 1e-9);
  }
}

TEST_CASE("construction rejects bad inputs") {
  CHECK_THROWS_AS(Objective::quadratic(2, {1, 0, 0, -1}, Point::zeros(2), 0.0),
                  std::invalid_argument);  // not PSD
  CHECK_THROWS_AS(Objective::quadratic(2, {1, 0.5, 0, 1}, Point::zeros(2), 0.0),
                  std::invalid_argument);  // not symmetric
  CHECK_THROWS_AS(Objective::svm_local(3, 1, {0}, 1.0, 2), std::invalid_argument);  // slack in y block
  CHECK_THROWS_AS(Objective::svm_local(3, 1, {1}, -1.0, 2), std::invalid_argument);
  Objective f = Objective::quadratic(2, identity(2), Point::zeros(2), 0.0);
  CHECK_THROWS_AS((void)f.value(Point::zeros(3)), std::invalid_argument);
  CHECK_THROWS_AS((void)f.gradient(Point::zeros(3)), std::invalid_argument);
}

TEST_CASE("combining quadratics sums the pieces") {
  Objective f1 = Objective::quadratic(2, identity(2), Point(std::vector<double>{1, 0}), 1.0);
  Objective f2 = Objective::quadratic(2, identity(2), Point(std::vector<double>{0, 2}), 2.0);
  Objective sum = combine_objectives({f1, f2});
  Point x(std::vector<double>{1, 1});
  CHECK(sum.value(x) == doctest::Approx(f1.value(x) + f2.value(x)).epsilon(1e-12));
  CHECK(approx_equal(sum.gradient(x), f1.gradient(x) + f2.gradient(x), 1e-12));
}
