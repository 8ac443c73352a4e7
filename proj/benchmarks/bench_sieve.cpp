#include <benchmark/benchmark.h>

#include "knstat/arith.hpp"

namespace {

void BM_KFreeWindow(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const knstat::KFreeSieve sieve(1'000'000'000, k);
    std::vector<std::uint8_t> flags(knstat::kDefaultSegment);
    std::uint64_t lo = 500'000'000;
    for (auto _ : state) {
        sieve.mark(lo, flags);
        benchmark::DoNotOptimize(flags.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(flags.size()));
}
BENCHMARK(BM_KFreeWindow)->Arg(2)->Arg(4)->Arg(6);

void BM_KFreeTable(benchmark::State& state) {
    for (auto _ : state) {
        auto table = knstat::kfree_sieve(static_cast<std::uint64_t>(state.range(0)), 2);
        benchmark::DoNotOptimize(table.count());
    }
}
BENCHMARK(BM_KFreeTable)->Arg(1'000'000);

void BM_IsKthPowerFree(benchmark::State& state) {
    knstat::i128 n = 1'000'000'007;
    for (auto _ : state) {
        benchmark::DoNotOptimize(knstat::is_kth_power_free(n, 4));
        n += 2;
    }
}
BENCHMARK(BM_IsKthPowerFree);

} // namespace
