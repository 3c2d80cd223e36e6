#include <benchmark/benchmark.h>

#include "oscibath/kernels.hpp"
#include "oscibath/network.hpp"
#include "oscibath/oracles.hpp"
#include "oscibath/white_noise.hpp"

using namespace oscibath;

static void BM_ModeSpectrum(benchmark::State& state) {
    const net::OscillatorNetwork network{int(state.range(0)), 1.0, 1.0, 0.7, 1.0};
    for (auto _ : state) {
        auto spectrum = net::mode_spectrum(network);
        benchmark::DoNotOptimize(spectrum.lambda_plus);
    }
}
BENCHMARK(BM_ModeSpectrum)->Arg(8)->Arg(64)->Arg(256);

static void BM_DenseEigensolve(benchmark::State& state) {
    const auto m = net::characteristic_matrix({int(state.range(0)), 1.0, 1.0, 0.7, 1.0});
    for (auto _ : state) {
        auto ev = oracles::dense_eigensolve(m);
        benchmark::DoNotOptimize(ev.data());
    }
}
BENCHMARK(BM_DenseEigensolve)->Arg(8)->Arg(64)->Arg(256);

static void BM_ShoKernel(benchmark::State& state) {
    const kernels::KernelSpec spec{1.0, 1.0, 1.0, 0.9};
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-6;
        benchmark::DoNotOptimize(kernels::sho_kernel(spec, x, 0.2).re);
    }
}
BENCHMARK(BM_ShoKernel);

static void BM_PairKernel(benchmark::State& state) {
    const kernels::PairSpec spec{4, 1.0, 1.0, 0.3, 1.0, 0.9, 0,
                                 kernels::KernelForm::standard};
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-6;
        benchmark::DoNotOptimize(kernels::pair_kernel(spec, x, -0.4).re);
    }
}
BENCHMARK(BM_PairKernel);

static void BM_FullPropagator(benchmark::State& state) {
    const net::OscillatorNetwork network{int(state.range(0)), 1.0, 1.0, 0.3, 1.0};
    const std::vector<double> coords(network.n, 0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kernels::full_propagator(network, coords, 0.9,
                                     kernels::KernelForm::standard)
                .re);
}
BENCHMARK(BM_FullPropagator)->Arg(4)->Arg(16)->Arg(64);

static void BM_FredholmDet(benchmark::State& state) {
    const wn::WhiteNoiseGrid grid{1.0, int(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(wn::fredholm_det(grid, 1.0, 1.0));
}
BENCHMARK(BM_FredholmDet)->Arg(250)->Arg(500)->Arg(1000);

static void BM_KernelAssembly(benchmark::State& state) {
    const wn::WhiteNoiseGrid grid{1.0, int(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(wn::assemble_sho_kernel(grid, 1.0, 1.0, 1.0, 0.5).re);
}
BENCHMARK(BM_KernelAssembly)->Arg(250)->Arg(500);

static void BM_TimeSliced(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            oracles::time_sliced_propagator(1.0, 1.0, 1.0, 1.0, 0.7, -0.3,
                                            int(state.range(0)))
                .re);
}
BENCHMARK(BM_TimeSliced)->Arg(100)->Arg(1000);

static void BM_CharacteristicMc(benchmark::State& state) {
    const wn::WhiteNoiseGrid grid{1.0, 64};
    const std::vector<double> profile(64, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            wn::characteristic_functional_mc(grid, profile, state.range(0), 7).value);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CharacteristicMc)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
