#include <benchmark/benchmark.h>

#include "drp/constraints.hpp"
#include "drp/rng.hpp"

namespace {

using namespace drp;

Point random_point(StreamRng& rng, int dim) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (double& x : v) x = 3.0 * rng.normal();
  return Point(std::move(v));
}

void BM_ProjectHalfspace(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  StreamRng rng(1, 0, StreamRng::Role::kData);
  Halfspace h(random_point(rng, dim), 0.25);
  Point v = random_point(rng, dim);
  ConstraintComponent c = h;
  for (auto _ : state) benchmark::DoNotOptimize(project(c, v));
}
BENCHMARK(BM_ProjectHalfspace)->Arg(8)->Arg(64)->Arg(512);

void BM_ProjectBall(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  StreamRng rng(2, 0, StreamRng::Role::kData);
  ConstraintComponent c = Ball(random_point(rng, dim), 1.0);
  Point v = random_point(rng, dim);
  for (auto _ : state) benchmark::DoNotOptimize(project(c, v));
}
BENCHMARK(BM_ProjectBall)->Arg(8)->Arg(64)->Arg(512);

void BM_ProjectTwoHalfspaces(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  StreamRng rng(3, 0, StreamRng::Role::kData);
  ConstraintComponent c = HalfspaceWithNonneg(random_point(rng, dim), -1.0, dim / 2);
  Point v = random_point(rng, dim);
  for (auto _ : state) benchmark::DoNotOptimize(project(c, v));
}
BENCHMARK(BM_ProjectTwoHalfspaces)->Arg(8)->Arg(64)->Arg(512);

void BM_ProjectIntersection(benchmark::State& state) {
  const int dim = 16;
  const int comps = static_cast<int>(state.range(0));
  StreamRng rng(4, 0, StreamRng::Role::kData);
  Point anchor = random_point(rng, dim);
  std::vector<ConstraintComponent> cs;
  for (int t = 0; t < comps; ++t) {
    Point a = random_point(rng, dim);
    cs.emplace_back(Halfspace(a, dot(a, anchor) + 0.5));
  }
  IntersectionSet s(std::move(cs));
  Point v = random_point(rng, dim);
  for (auto _ : state) benchmark::DoNotOptimize(project_intersection(s, v, 1e-8, 1000));
}
BENCHMARK(BM_ProjectIntersection)->Arg(2)->Arg(8)->Arg(32);

}  // namespace
