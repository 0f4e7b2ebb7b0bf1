#include <benchmark/benchmark.h>

#include <cmath>

#include "shiftbandit/aux_index.hpp"
#include "shiftbandit/elimination.hpp"
#include "shiftbandit/environment.hpp"
#include "shiftbandit/geometry.hpp"
#include "shiftbandit/rng.hpp"
#include "shiftbandit/transfer_policy.hpp"

using namespace shiftbandit;

namespace {

AuxDataset make_aux(std::int64_t n_p, std::uint64_t seed) {
  RngStream rng(seed);
  const RewardSpec spec = make_bump_reward(0.8, 0.05, rng);
  SourceSpec src{1.0, {0.5, 0.5}, n_p};
  return generate_aux_dataset(spec, src, rng);
}

void BM_BinOf(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  RngStream rng(1);
  Point x{rng.uniform01(), rng.uniform01()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(bin_of(level, x));
  }
}
BENCHMARK(BM_BinOf)->Arg(4)->Arg(12)->Arg(20);

void BM_PullLimit(benchmark::State& state) {
  BoundParams p;
  p.beta = 0.8;
  p.c_beta = 0.5 * std::pow(4.0, 0.8);
  p.gamma = 1.0;
  p.kappa = 1.0;
  p.n_q = 100000;
  p.n_p = 300000;
  p.d = 2;
  const BinId bin{static_cast<int>(state.range(0)), {1, 1}};
  ArmAggregate agg;
  agg.n_aux = 37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pull_limit(agg, bin, p));
  }
}
BENCHMARK(BM_PullLimit)->Arg(2)->Arg(5)->Arg(8);

void BM_AuxIndexBuild(benchmark::State& state) {
  const AuxDataset aux = make_aux(state.range(0), 2);
  for (auto _ : state) {
    AuxIndex index(aux, 2);
    benchmark::DoNotOptimize(index.size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AuxIndexBuild)->Range(10000, 300000)->Complexity();

void BM_AuxIndexStats(benchmark::State& state) {
  const AuxDataset aux = make_aux(100000, 3);
  const AuxIndex index(aux, 2);
  RngStream rng(4);
  for (auto _ : state) {
    const int level = 3 + static_cast<int>(rng.uniform_int(4));
    const BinId bin{level, {1 + rng.uniform_int(std::int64_t{1} << level),
                            1 + rng.uniform_int(std::int64_t{1} << level)}};
    benchmark::DoNotOptimize(index.stats(bin, 2));
  }
}
BENCHMARK(BM_AuxIndexStats);

// One full select/observe step of the transfer policy, tree growth included.
void BM_TransferStep(benchmark::State& state) {
  const std::int64_t n_p = state.range(0);
  RngStream rng(5);
  const RewardSpec spec = make_bump_reward(0.8, 0.05, rng);
  SourceSpec src{1.0, {0.5, 0.5}, n_p};
  AuxDataset aux = generate_aux_dataset(spec, src, rng);

  TransferConfig cfg;
  cfg.bounds.beta = 0.8;
  cfg.bounds.c_beta = 0.07;
  cfg.bounds.gamma = 1.0;
  cfg.bounds.kappa = 1.0;
  cfg.bounds.n_q = 100000;
  cfg.bounds.n_p = n_p;
  cfg.bounds.d = 2;
  TransferPolicy policy(cfg, std::move(aux));

  RngStream env_rng(6);
  for (auto _ : state) {
    const Point x = sample_target_context(2, env_rng);
    const int arm = policy.select(x);
    policy.observe(x, arm, draw_reward(spec, arm, x, env_rng));
  }
}
BENCHMARK(BM_TransferStep)->Arg(0)->Arg(100000);

void BM_GenerateAux(benchmark::State& state) {
  RngStream rng(7);
  const RewardSpec spec = make_bump_reward(0.8, 0.05, rng);
  SourceSpec src{1.0, {0.5, 0.5}, state.range(0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_aux_dataset(spec, src, rng).size());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GenerateAux)->Range(10000, 300000)->Complexity();

}  // namespace

BENCHMARK_MAIN();
