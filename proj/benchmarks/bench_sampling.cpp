// sfcqmc is licensed under the Apache License, Version 2.0.
// SPDX-License-Identifier: Apache-2.0

#include <sfcqmc/curves.hpp>
#include <sfcqmc/harness.hpp>
#include <sfcqmc/sequences.hpp>
#include <sfcqmc/strategies.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace sfcqmc;

void BM_CurvePoint(benchmark::State& state) {
    GridSpec grid{CurveKind(state.range(0)), 10};
    uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(curve_point(grid, i));
        i = (i + 977) % grid.length();
    }
}
BENCHMARK(BM_CurvePoint)
    ->Arg(int(CurveKind::Morton))
    ->Arg(int(CurveKind::Hilbert))
    ->Arg(int(CurveKind::Moore));

void BM_CurvePointPeano(benchmark::State& state) {
    GridSpec grid{CurveKind::Peano, 6};
    uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(curve_point(grid, i));
        i = (i + 977) % grid.length();
    }
}
BENCHMARK(BM_CurvePointPeano);

void BM_CurveIndex(benchmark::State& state) {
    GridSpec grid{CurveKind(state.range(0)), 10};
    uint32_t x = 0, y = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(curve_index(grid, {x, y}));
        x = (x + 131) % grid.side();
        y = (y + 313) % grid.side();
    }
}
BENCHMARK(BM_CurveIndex)
    ->Arg(int(CurveKind::Morton))
    ->Arg(int(CurveKind::Hilbert))
    ->Arg(int(CurveKind::Moore));

void BM_RadicalInverse(benchmark::State& state) {
    const ScrambleSpec scrambles[] = {
        ScrambleSpec::identity(), ScrambleSpec::zaremba(), ScrambleSpec::faure(),
        ScrambleSpec::random_digit(1), ScrambleSpec::owen(1, 32)};
    RadicalInverseSpec spec{3, scrambles[state.range(0)]};
    uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(radical_inverse(spec, i));
        ++i;
    }
}
BENCHMARK(BM_RadicalInverse)->DenseRange(0, 4);

void BM_HaltonPoint(benchmark::State& state) {
    HaltonSpec spec;
    spec.dimensions = uint32_t(state.range(0));
    uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(halton_point(spec, i));
        ++i;
    }
}
BENCHMARK(BM_HaltonPoint)->Arg(2)->Arg(8)->Arg(32);

void BM_LatticePoint(benchmark::State& state) {
    LatticeSpec lattice = default_lattice(8);
    uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lattice_point(lattice, i));
        ++i;
    }
}
BENCHMARK(BM_LatticePoint);

void BM_AssignHilbertBlocks(benchmark::State& state) {
    HaltonSpec halton;
    halton.dimensions = 4;
    auto spec = make_hilbert_blocks(CurveKind::Hilbert, {1920, 1080}, 16, halton);
    uint32_t x = 0, y = 0;
    uint32_t s = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(assign_hilbert_blocks(spec, {{x, y}, s}));
        x = (x + 641) % 1920;
        y = (y + 479) % 1080;
        s = (s + 1) % 16;
    }
}
BENCHMARK(BM_AssignHilbertBlocks);

void BM_Render(benchmark::State& state) {
    HaltonSpec halton;
    halton.dimensions = 2;
    StrategySpec strategy =
        make_hilbert_blocks(CurveKind::Hilbert, {64, 64}, 4, halton);
    const TestIntegrand& disk = find_integrand("disk");
    for (auto _ : state)
        benchmark::DoNotOptimize(render(strategy, disk, 4, 1));
    state.SetItemsProcessed(int64_t(state.iterations()) * 64 * 64 * 4);
}
BENCHMARK(BM_Render);

}  // namespace

BENCHMARK_MAIN();
