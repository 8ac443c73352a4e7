#include <benchmark/benchmark.h>

#include "knstat/census.hpp"

namespace {

void BM_CensusJ1728(benchmark::State& state) {
    auto req = knstat::default_request(knstat::Family::J1728, knstat::checked_pow(10, static_cast<unsigned>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(knstat::census(req).total);
    }
}
BENCHMARK(BM_CensusJ1728)->Arg(12)->Arg(15)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_CensusJ0(benchmark::State& state) {
    auto req = knstat::default_request(knstat::Family::J0, knstat::checked_pow(10, static_cast<unsigned>(state.range(0))));
    req.grouping = knstat::Grouping::ByTorsion;
    for (auto _ : state) {
        benchmark::DoNotOptimize(knstat::census(req).total);
    }
}
BENCHMARK(BM_CensusJ0)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_CensusThreads(benchmark::State& state) {
    auto req = knstat::default_request(knstat::Family::J0, knstat::checked_pow(10, 14));
    for (auto _ : state) {
        benchmark::DoNotOptimize(knstat::census(req, static_cast<unsigned>(state.range(0))).total);
    }
}
BENCHMARK(BM_CensusThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace
