#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "miura/bell.hpp"
#include "miura/forms.hpp"
#include "miura/quadrature.hpp"
#include "miura/scenarios.hpp"
#include "miura/solver.hpp"

namespace {

std::shared_ptr<const miura::BellSpace> axisym_space(int nx, int ny)
{
    const auto scenario = miura::axisymmetric(M_PI / 2);
    return std::make_shared<const miura::BellSpace>(scenario.build_mesh(nx, ny));
}

void BM_BuildSpace(benchmark::State& state)
{
    const auto scenario = miura::axisymmetric(M_PI / 2);
    const auto mesh = scenario.build_mesh(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        miura::BellSpace space(mesh);
        benchmark::DoNotOptimize(space.n_dofs());
    }
    state.counters["cells"] = mesh.n_cells();
}
BENCHMARK(BM_BuildSpace)->Args({6, 74})->Args({12, 148})->Unit(benchmark::kMillisecond);

void BM_AssembleLinearized(benchmark::State& state)
{
    const auto space = axisym_space(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const auto reference = miura::axisymmetric_reference(M_PI / 2);
    const auto frozen = miura::interpolate(space, reference);
    const miura::CoefficientBounds bounds(3.0);
    for (auto _ : state) {
        auto system = miura::assemble_linearized(frozen, reference, 1.0, bounds, miura::CoefficientModel::clamped);
        benchmark::DoNotOptimize(system.block.nonZeros());
    }
    state.counters["dofs"] = space->n_dofs();
}
BENCHMARK(BM_AssembleLinearized)->Args({6, 74})->Args({12, 148})->Unit(benchmark::kMillisecond);

void BM_FixedPointAxisym(benchmark::State& state)
{
    const auto scenario = miura::axisymmetric(M_PI / 2);
    const auto space = std::make_shared<const miura::BellSpace>(scenario.build_mesh());
    const auto config = scenario.configure({});
    for (auto _ : state) {
        auto report = miura::fixed_point(space, scenario.boundary, config);
        benchmark::DoNotOptimize(report.iterations);
    }
}
BENCHMARK(BM_FixedPointAxisym)->Unit(benchmark::kMillisecond)->Iterations(3);

} // namespace

BENCHMARK_MAIN();
