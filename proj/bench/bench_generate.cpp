// Serial reference vs OpenMP kernels for batch generation and analysis.

#include <benchmark/benchmark.h>

#include "softbell/analysis.hpp"
#include "softbell/generator.hpp"

namespace {

softbell::GeneratorConfig bench_config(std::uint64_t n) {
    softbell::GeneratorConfig c;
    c.emission.alpha = 0.1;
    c.settings_A = {softbell::Direction::unit_z(), softbell::Direction::unit_x()};
    c.settings_B = {softbell::Direction::from_angles(0.7853981633974483, 0.0),
                    softbell::Direction::from_angles(2.356194490192345, 0.0)};
    c.n_events = n;
    c.seed = 7;
    return c;
}

softbell::AnalysisPlan bench_plan(const softbell::GeneratorConfig& c) {
    softbell::AnalysisPlan plan;
    plan.cut.solid_angle = 0.01;
    plan.chsh.push_back({c.settings_A[0], c.settings_A[1], c.settings_B[0], c.settings_B[1]});
    return plan;
}

void BM_GenerateSerial(benchmark::State& state) {
    const auto config = bench_config(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        auto events = softbell::generate_batch_serial(config);
        benchmark::DoNotOptimize(events.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GenerateParallel(benchmark::State& state) {
    const auto config = bench_config(static_cast<std::uint64_t>(state.range(0)));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        auto events = softbell::generate_batch(config, workers);
        benchmark::DoNotOptimize(events.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AnalyzeSerial(benchmark::State& state) {
    const auto config = bench_config(static_cast<std::uint64_t>(state.range(0)));
    const auto events = softbell::generate_batch(config, 1);
    const auto plan = bench_plan(config);
    for (auto _ : state) {
        softbell::AnalysisAccumulator acc(plan);
        acc.add(events);
        benchmark::DoNotOptimize(acc.counts().accepted);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_AnalyzeParallel(benchmark::State& state) {
    const auto config = bench_config(static_cast<std::uint64_t>(state.range(0)));
    const auto events = softbell::generate_batch(config, 1);
    const auto plan = bench_plan(config);
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        softbell::AnalysisAccumulator acc(plan);
        acc.add_parallel(events, workers);
        benchmark::DoNotOptimize(acc.counts().accepted);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_GenerateSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateParallel)->Args({100000, 1})->Args({100000, 2})->Args({100000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyzeParallel)->Args({100000, 1})->Args({100000, 2})->Args({100000, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
