#include <benchmark/benchmark.h>

#include <tprophet/analytics.hpp>
#include <tprophet/corpus.hpp>
#include <tprophet/engine.hpp>
#include <tprophet/matroid.hpp>

namespace {

using namespace tprophet;

void BM_KruskalUniform(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const Matroid m = Matroid::uniform(k, k / 2);
  RandomStream rng(7);
  const auto w = random_weights(rng, k);
  for (auto _ : state) benchmark::DoNotOptimize(max_weight_feasible_set(m, w));
}
BENCHMARK(BM_KruskalUniform)->Arg(8)->Arg(32)->Arg(64);

void BM_KruskalGraphic(benchmark::State& state) {
  // Complete graph on v vertices.
  const auto v = static_cast<std::size_t>(state.range(0));
  std::vector<GraphicEdge> edges;
  for (std::size_t a = 0; a < v; ++a)
    for (std::size_t b = a + 1; b < v; ++b) edges.push_back({a, b});
  const Matroid m = Matroid::graphic(edges);
  RandomStream rng(7);
  const auto w = random_weights(rng, m.ground_size());
  for (auto _ : state) benchmark::DoNotOptimize(max_weight_feasible_set(m, w));
}
BENCHMARK(BM_KruskalGraphic)->Arg(5)->Arg(8)->Arg(11);

void BM_ExplicitKruskal(benchmark::State& state) {
  RandomStream rng(11);
  const Matroid m = random_explicit_matroid(rng, static_cast<std::size_t>(state.range(0)));
  const auto w = random_weights(rng, m.ground_size());
  for (auto _ : state) benchmark::DoNotOptimize(max_weight_feasible_set(m, w));
}
BENCHMARK(BM_ExplicitKruskal)->Arg(6)->Arg(10);

void BM_ExactOffline(benchmark::State& state) {
  RandomStream rng(13);
  const Matroid m = Matroid::uniform(4, 2);
  const auto d = random_joint(rng, 4, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exact_offline_per_step(m, d));
  state.SetComplexityN(static_cast<std::int64_t>(d.size()));
}
BENCHMARK(BM_ExactOffline)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_MonteCarloOnline(benchmark::State& state) {
  RandomStream rng(17);
  const Matroid m = Matroid::uniform(4, 2);
  const auto d = random_joint(rng, 4, 8);
  const auto inst = MarketInstance::iid(m, d, 16, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo(inst, Policy::kOnlineIid, static_cast<std::size_t>(state.range(0)), 1));
}
BENCHMARK(BM_MonteCarloOnline)->Arg(100)->Arg(1000);

}  // namespace
BENCHMARK_MAIN();
