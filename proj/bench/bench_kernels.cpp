// Serial reference vs OpenMP kernel for the composition expansion and the
// Monte Carlo estimator. Set OMP_NUM_THREADS to vary the thread count.

#include "sumident/moments.hpp"
#include "sumident/montecarlo.hpp"

#include <benchmark/benchmark.h>

using namespace sumident;

namespace {

MomentTable<double> float_table(unsigned n, unsigned m) {
    std::vector<Rational> rates;
    for (unsigned k = 1; k <= n; ++k) rates.emplace_back(k, 3);
    return exponential_moment_table<double>(rates, m);
}

MomentTable<Rational> exact_table(unsigned n, unsigned m) {
    std::vector<Rational> lengths;
    for (unsigned k = 1; k <= n; ++k) lengths.emplace_back(k + 1, k);
    return uniform_moment_table<Rational>(lengths, m);
}

template <bool Parallel>
void BM_ExpansionFloat(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    const auto m = static_cast<unsigned>(state.range(1));
    const auto table = float_table(n, m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? expansion_moment(table, m) : expansion_moment_serial(table, m));
    }
}

template <bool Parallel>
void BM_ExpansionExact(benchmark::State& state) {
    const auto n = static_cast<unsigned>(state.range(0));
    const auto m = static_cast<unsigned>(state.range(1));
    const auto table = exact_table(n, m);
    for (auto _ : state) {
        auto value = Parallel ? expansion_moment(table, m) : expansion_moment_serial(table, m);
        benchmark::DoNotOptimize(value);
    }
}

template <bool Parallel>
void BM_MonteCarlo(benchmark::State& state) {
    SampleSpec spec;
    spec.family = Family::gamma;
    spec.first = {2.5, 1.0, 3.0};
    spec.second = {0.5, 2.0, 1.0};
    spec.sample_count = static_cast<std::size_t>(state.range(0));
    spec.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? estimate_moment(spec, 3) : estimate_moment_serial(spec, 3));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ExpansionFloat<false>)->Args({4, 12})->Args({6, 16})->Args({8, 16});
BENCHMARK(BM_ExpansionFloat<true>)->Args({4, 12})->Args({6, 16})->Args({8, 16});
BENCHMARK(BM_ExpansionExact<false>)->Args({4, 8})->Args({5, 10});
BENCHMARK(BM_ExpansionExact<true>)->Args({4, 8})->Args({5, 10});
BENCHMARK(BM_MonteCarlo<false>)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo<true>)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
