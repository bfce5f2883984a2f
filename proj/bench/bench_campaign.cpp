// Serial reference vs OpenMP campaign, plus the per-point kernels that
// dominate a trial.

#include <benchmark/benchmark.h>

#include "modgrad/harness.hpp"
#include "modgrad/schwarzpick.hpp"

using namespace modgrad;

namespace {

FuzzConfig bench_config(int trials) {
  FuzzConfig cfg;
  cfg.trials = trials;
  cfg.points_per_trial = 20;
  cfg.n = 3;
  cfg.m = 3;
  cfg.max_degree = 3;
  return cfg;
}

void BM_CampaignSerial(benchmark::State& state) {
  const FuzzConfig cfg = bench_config(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fuzz_campaign(cfg, nullptr, Exec::serial));
  state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.points_per_trial);
}

void BM_CampaignParallel(benchmark::State& state) {
  const FuzzConfig cfg = bench_config(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fuzz_campaign(cfg, nullptr, Exec::parallel));
  state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.points_per_trial);
  state.counters["threads"] = parallel_threads();
}

void BM_ModGrad(benchmark::State& state) {
  const int n = int(state.range(0));
  const HoloMap f = gen_random_polymap(n, n, 4, 0.05, 3);
  const CVector z = sample_ball(n, 1, 4).front();
  for (auto _ : state) benchmark::DoNotOptimize(mod_grad(f, z));
}

void BM_ModGradFd(benchmark::State& state) {
  const int n = int(state.range(0));
  const HoloMap f = gen_random_polymap(n, n, 4, 0.05, 3);
  const CVector z = sample_ball(n, 1, 4).front();
  for (auto _ : state) benchmark::DoNotOptimize(mod_grad_fd(f, z));
}

}  // namespace

BENCHMARK(BM_CampaignSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CampaignParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModGrad)->DenseRange(1, 4);
BENCHMARK(BM_ModGradFd)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
