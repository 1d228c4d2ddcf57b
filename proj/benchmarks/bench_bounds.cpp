#include <benchmark/benchmark.h>

#include "ssvb/bounds.hpp"
#include "ssvb/io.hpp"
#include "ssvb/spectral.hpp"

namespace {

ssvb::Matrix test_matrix(int n) {
    ssvb::EnsembleSpec spec;
    spec.family = ssvb::Family::UniformRandom;
    spec.n = n;
    spec.trials = 1;
    spec.seed = 0xBE5Du;
    return ssvb::generate_trial(spec, 0);
}

void BM_Determinant(benchmark::State& state) {
    const ssvb::Matrix m = test_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssvb::determinant(m));
    }
}
BENCHMARK(BM_Determinant)->Arg(4)->Arg(16)->Arg(64)->Arg(128);

void BM_JacobiEigenvalues(benchmark::State& state) {
    const ssvb::GramMatrix g = ssvb::gram(test_matrix(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssvb::jacobi_eigenvalues(g));
    }
}
BENCHMARK(BM_JacobiEigenvalues)->Arg(4)->Arg(16)->Arg(64);

void BM_ComputeAllBounds(benchmark::State& state) {
    const ssvb::Matrix m = test_matrix(static_cast<int>(state.range(0)));
    const ssvb::SolverConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssvb::compute_all(m, cfg, false));
    }
}
BENCHMARK(BM_ComputeAllBounds)->Arg(4)->Arg(16)->Arg(64);

void BM_ComputeAllWithOracle(benchmark::State& state) {
    const ssvb::Matrix m = test_matrix(static_cast<int>(state.range(0)));
    const ssvb::SolverConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssvb::compute_all(m, cfg, true));
    }
}
BENCHMARK(BM_ComputeAllWithOracle)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
