#include <benchmark/benchmark.h>

#include "mfhj/cw_exact.hpp"
#include "mfhj/hj_limit.hpp"

namespace {

void BM_LogPartition(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mfhj::cw::log_partition({0.3, 1.5}, n));
    state.SetComplexityN(n);
}
BENCHMARK(BM_LogPartition)->RangeMultiplier(10)->Range(10, 100000)->Complexity(benchmark::oN);

void BM_ExactFields(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mfhj::cw::exact_fields({0.3, 1.5}, n));
}
BENCHMARK(BM_ExactFields)->Arg(100)->Arg(10000);

void BM_ViscousAction(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mfhj::hj::viscous_action({0.3, 2.0}, n));
}
BENCHMARK(BM_ViscousAction)->Arg(50)->Arg(200)->Arg(800);

void BM_LaxAction(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mfhj::hj::lax_action({0.3, 2.0}));
}
BENCHMARK(BM_LaxAction);

} // namespace
