#include "orbitsum/arith.hpp"
#include "orbitsum/dynamics.hpp"
#include "orbitsum/survey.hpp"

#include <benchmark/benchmark.h>

using namespace orbitsum;

namespace {

// Primes near 10^3 .. 1.3 * 10^6 (p_100000 = 1299709).
constexpr std::int64_t kPrimes[] = {1'009, 10'007, 104'729, 1'299'709};

void BM_Peel(benchmark::State& state)
{
    const MapSpec spec(2, 1, static_cast<Prime>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_periodic_peel(spec).count);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ImageStabilize(benchmark::State& state)
{
    const MapSpec spec(2, 1, static_cast<Prime>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_periodic_image_stabilize(spec).count);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PeelCubic(benchmark::State& state)
{
    const MapSpec spec(3, 1, static_cast<Prime>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_periodic_peel(spec).count);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MapStep(benchmark::State& state)
{
    const MapStep f(static_cast<unsigned>(state.range(0)), 1, 1'299'709);
    Residue x = 12345;
    for (auto _ : state) {
        x = f(x);
        benchmark::DoNotOptimize(x);
    }
}

void BM_Sieve(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(sieve_primes(static_cast<std::uint64_t>(state.range(0))).size());
    }
}

void BM_SumOverC(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(sum_over_c(static_cast<Prime>(state.range(0)), 2));
    }
}

} // namespace

BENCHMARK(BM_Peel)->ArgsProduct({{std::begin(kPrimes), std::end(kPrimes)}});
BENCHMARK(BM_ImageStabilize)->ArgsProduct({{std::begin(kPrimes), std::end(kPrimes)}});
BENCHMARK(BM_PeelCubic)->Arg(104'729);
BENCHMARK(BM_MapStep)->Arg(2)->Arg(3)->Arg(7);
BENCHMARK(BM_Sieve)->Arg(104'729)->Arg(1'299'709)->Arg(100'000'000);
BENCHMARK(BM_SumOverC)->Arg(1'009)->Arg(7'919);

BENCHMARK_MAIN();
