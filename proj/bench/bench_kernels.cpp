// Serial reference vs OpenMP kernel for the two parallel hot spots.
#include <benchmark/benchmark.h>

#include <vector>

#include "telegf/profile.hpp"
#include "telegf/rw_oracle.hpp"

namespace {

using namespace telegf;

const Medium unit(1.0, 1.0);

void BM_solve(benchmark::State& state) {
    const auto exec = state.range(0) ? Execution::parallel : Execution::serial;
    const auto bc = BoundaryRegime::backreaction(1.0);
    const SolverGrid grid = make_grid(unit, 0.5, 1e-3, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve(bc, unit, 0.5, grid, exec));
    state.SetLabel(exec == Execution::parallel ? "openmp" : "serial");
}
BENCHMARK(BM_solve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_tabulate(benchmark::State& state) {
    const auto exec = state.range(0) ? Execution::parallel : Execution::serial;
    const auto bc = BoundaryRegime::radiation(0.5);
    std::vector<double> xs(401);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 4.0 * double(i) / 400.0;
    for (auto _ : state) benchmark::DoNotOptimize(tabulate(Route::bromwich, bc, unit, 0.5, 2.0, xs, {}, exec));
    state.SetLabel(exec == Execution::parallel ? "openmp" : "serial");
}
BENCHMARK(BM_tabulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
    configure_threads();
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
}
