#include "smz/braid.hpp"
#include "smz/mzv.hpp"
#include "smz/selberg.hpp"
#include "smz/transport.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace smz;

static void BM_MzvEval(benchmark::State& state) {
  const MZVIndex k = {1, 2, 3};
  for (auto _ : state) benchmark::DoNotOptimize(mzv_eval_cutoff(k, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MzvEval)->Arg(16)->Arg(32)->Arg(48);

static void BM_TowerBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_tower(n, 2));
}
BENCHMARK(BM_TowerBuild)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

static void BM_SelbergIntegrate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  auto a = exponents_from_list(n, sample_generic_alpha(n, rng));
  IndexTuple I{2, std::vector<int>(n - 2, 1)};
  GraphSum chain = wedge_chain(I);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_sum(chain, a));
}
BENCHMARK(BM_SelbergIntegrate)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_AssociatorNumeric(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(associator_numeric(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_AssociatorNumeric)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_AssociatorSymbolic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(associator_symbolic(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_AssociatorSymbolic)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Projection(benchmark::State& state) {
  std::mt19937_64 rng(2);
  auto alpha = sample_generic_alpha(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(projection_identity_check(4, alpha));
}
BENCHMARK(BM_Projection)->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
