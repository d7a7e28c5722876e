// Benchmarks comparing the OpenMP-parallel kernels against their serial
// reference implementations.
#include <benchmark/benchmark.h>

#include <random>

#include "embedkit/cyclotomic.hpp"
#include "embedkit/matrix.hpp"
#include "embedkit/oracle.hpp"
#include "embedkit/pm_builder.hpp"

using namespace embedkit;

namespace {

Mat random_mat(const Modulus& m, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Mat a(m, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = rng() % m.q;
    return a;
}

void bench_multiply_parallel(benchmark::State& state) {
    Modulus m(3, 4);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    Mat a = random_mat(m, n, 1), b = random_mat(m, n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b));
}

void bench_multiply_serial(benchmark::State& state) {
    Modulus m(3, 4);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    Mat a = random_mat(m, n, 1), b = random_mat(m, n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(multiply_serial(a, b));
}

void bench_oracle(benchmark::State& state, bool parallel) {
    PmModule pm = synthetic_module(3, 1, {3, 1}, 2);
    auto cf = CycloFactorization::build(3, 1, 2, 1);
    OracleOptions opt;
    opt.parallel = parallel;
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_g_submodules(pm.module, cf, opt));
}

void bench_oracle_parallel(benchmark::State& state) { bench_oracle(state, true); }
void bench_oracle_serial(benchmark::State& state) { bench_oracle(state, false); }

}  // namespace

BENCHMARK(bench_multiply_parallel)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bench_multiply_serial)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bench_oracle_parallel);
BENCHMARK(bench_oracle_serial);

BENCHMARK_MAIN();
