// Serial reference vs OpenMP suite on the same configuration.

#include <benchmark/benchmark.h>

#include "spectre/verify.hpp"

namespace {

void BM_SuiteSerial(benchmark::State& state) {
    const auto config = spectre::SuiteConfig::uniform(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(spectre::run_suite_serial(config).failures());
    state.SetItemsProcessed(state.iterations() * state.range(0) * 8);
}

void BM_SuiteParallel(benchmark::State& state) {
    const auto config = spectre::SuiteConfig::uniform(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(spectre::run_suite(config).failures());
    state.SetItemsProcessed(state.iterations() * state.range(0) * 8);
}

}  // namespace

BENCHMARK(BM_SuiteSerial)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SuiteParallel)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
