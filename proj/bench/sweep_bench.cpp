// Serial reference sweep against the OpenMP sweep on the same grid.

#include <benchmark/benchmark.h>

#include <numbers>

#include "qclone/sweep.hpp"

namespace {

qclone::SweepSpec make_spec(int side, qclone::CopyVariant variant) {
  qclone::SweepSpec spec;
  spec.variant = variant;
  spec.theta = {0.0, std::numbers::pi / 2.0, side};
  spec.phi = {0.0, 2.0 * std::numbers::pi, side};
  return spec;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = make_spec(static_cast<int>(state.range(0)), qclone::CopyVariant::Triplicator);
  for (auto _ : state) benchmark::DoNotOptimize(qclone::sweep_serial(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = make_spec(static_cast<int>(state.range(0)), qclone::CopyVariant::Triplicator);
  for (auto _ : state) benchmark::DoNotOptimize(qclone::sweep_parallel(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
