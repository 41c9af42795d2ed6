#include <benchmark/benchmark.h>

#include "drp/engine.hpp"
#include "drp/oracles.hpp"

namespace {

using namespace drp;

void BM_Mix(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int dim = 64;
  StreamRng rng(5, 0, StreamRng::Role::kData);
  TopologySchedule sched(m, TopologySchedule::Clique{});
  WeightMatrix W = metropolis_weights(sched.edges_at(0), m);
  std::vector<Point> xs;
  for (int i = 0; i < m; ++i) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (double& x : v) x = rng.normal();
    xs.emplace_back(std::move(v));
  }
  for (auto _ : state) benchmark::DoNotOptimize(mix(W, xs));
}
BENCHMARK(BM_Mix)->Arg(4)->Arg(10)->Arg(32);

void BM_EngineIteration(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  auto agents = make_quadratic_problem(10, m, 4, 7);
  for (auto _ : state) {
    RunConfig cfg{.agents = agents, .schedule = TopologySchedule(m, TopologySchedule::Clique{})};
    cfg.max_iters = 100;
    cfg.seed = 1;
    cfg.cadence = 100;
    benchmark::DoNotOptimize(run(cfg));
  }
  state.SetItemsProcessed(state.iterations() * 100 * m);
}
BENCHMARK(BM_EngineIteration)->Arg(2)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_MinibatchStep(benchmark::State& state) {
  const int b = static_cast<int>(state.range(0));
  auto agents = make_quadratic_problem(16, 1, 6, 9);
  const auto& agent = agents.front();
  StreamRng rng(6, 0, StreamRng::Role::kSample);
  std::vector<double> v0(16);
  for (double& x : v0) x = rng.normal();
  Point v(v0);
  std::vector<int> omegas(static_cast<std::size_t>(b));
  for (auto _ : state) {
    for (int& w : omegas) w = sample_component(agent, rng);
    benchmark::DoNotOptimize(
        minibatch_step(agent.objective, agent.components, v, 0.01, omegas));
  }
}
BENCHMARK(BM_MinibatchStep)->Arg(1)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
