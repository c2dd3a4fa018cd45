#include <benchmark/benchmark.h>

#include "catqkd/bell_horodecki.hpp"
#include "catqkd/cat_protocol.hpp"
#include "catqkd/filtering.hpp"
#include "catqkd/fock_oracle.hpp"
#include "catqkd/keyrate.hpp"

using namespace catqkd;

static void BM_Coefficients(benchmark::State& state) {
    const ChannelPoint pt(0.5, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(coefficients(pt));
}
BENCHMARK(BM_Coefficients);

static void BM_FilterPipeline(benchmark::State& state) {
    const ChannelPoint pt(0.5, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(filter_pipeline(pt).success_prob);
}
BENCHMARK(BM_FilterPipeline);

static void BM_SmaxFromState(benchmark::State& state) {
    const auto fs = filtered_state_closed_form(ChannelPoint(0.5, 0.5));
    for (auto _ : state) benchmark::DoNotOptimize(s_max_from_state(fs.state).s_max);
}
BENCHMARK(BM_SmaxFromState);

static void BM_EigHermitian4(benchmark::State& state) {
    const Mat4c m = rho_unfiltered(ChannelPoint(0.7, 0.4)).mat();
    for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian4(m).values[0]);
}
BENCHMARK(BM_EigHermitian4);

static void BM_OptimizeGamma(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(optimize_gamma(0.1).k_opt);
}
BENCHMARK(BM_OptimizeGamma);

static void BM_CriticalQber(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(critical_qber(0.1)->q_crit);
}
BENCHMARK(BM_CriticalQber);

static void BM_BruteForceSmax(benchmark::State& state) {
    const auto fs = filtered_state_closed_form(ChannelPoint(0.5, 0.5));
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_s_max(fs.state, state.range(0), 40));
}
BENCHMARK(BM_BruteForceSmax)->Arg(12)->Arg(24);

static void BM_FockReducedState(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(reduced_state(1.0, 0.5235987755982988, 0.8, n_max));
}
BENCHMARK(BM_FockReducedState)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
