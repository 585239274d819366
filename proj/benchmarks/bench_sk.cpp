#include <benchmark/benchmark.h>

#include "mfhj/sk_finite.hpp"
#include "mfhj/sk_rs.hpp"

namespace {

void BM_SolveQbar(benchmark::State& state) {
    // Low temperature, and the slow neighbourhood of the bifurcation.
    const double t = state.range(0) == 0 ? 2.0 : 1.001;
    for (auto _ : state) benchmark::DoNotOptimize(mfhj::sk::solve_qbar({0.0, t, 0.0}));
}
BENCHMARK(BM_SolveQbar)->Arg(0)->Arg(1);

void BM_RsPressure(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(mfhj::sk::rs_pressure(1.2, 0.3));
}
BENCHMARK(BM_RsPressure);

void BM_GibbsCorrelators(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto sample = mfhj::sk::draw_sample(n, 7, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(mfhj::sk::gibbs_correlators(sample, {0.4, 0.36, 0.2}));
    state.SetComplexityN(n);
}
BENCHMARK(BM_GibbsCorrelators)->DenseRange(6, 14, 2);

void BM_OverlapMonomials(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto omega = mfhj::sk::gibbs_correlators(mfhj::sk::draw_sample(n, 7, 0), {0.4, 0.36, 0.2});
    for (auto _ : state) benchmark::DoNotOptimize(mfhj::sk::overlap_monomials(omega));
}
BENCHMARK(BM_OverlapMonomials)->DenseRange(6, 12, 2);

} // namespace
