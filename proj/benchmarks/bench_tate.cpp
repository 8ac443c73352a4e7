#include <benchmark/benchmark.h>

#include "knstat/families.hpp"
#include "knstat/tate.hpp"

namespace {

void BM_TateJ1728(benchmark::State& state) {
    knstat::i128 A = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(knstat::tate({0, 0, 0, A, 0}, 2));
        A = A % 100'000 + 1;
    }
}
BENCHMARK(BM_TateJ1728);

void BM_TateJ0(benchmark::State& state) {
    knstat::i128 B = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(knstat::tate({0, 0, 0, 0, B}, 3));
        B = B % 100'000 + 1;
    }
}
BENCHMARK(BM_TateJ0);

void BM_TateLargePrime(benchmark::State& state) {
    const knstat::i128 p = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(knstat::tate({0, 0, 0, p * p, p * p * p}, static_cast<std::int64_t>(p)));
    }
}
BENCHMARK(BM_TateLargePrime)->Arg(101)->Arg(10007);

void BM_FastJ0(benchmark::State& state) {
    knstat::i128 B = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(knstat::kodaira_fast_j0(B));
        B = B % 100'000 + 1;
        if (B % 729 == 0) {
            ++B;
        }
    }
}
BENCHMARK(BM_FastJ0);

} // namespace
