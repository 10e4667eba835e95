// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

// Serial reference kernel vs the OpenMP kernel on one simulation cell.
// Arguments: replications per batch, and worker count for the parallel case.

#include <vector>

#include <benchmark/benchmark.h>

#include "ratioest/estimator.hpp"
#include "ratioest/montecarlo.hpp"

namespace {

using namespace ratioest;

struct Cell {
    TargetParameter param = kLRR;
    std::uint64_t r = required_successes(0.09, kLRR);
    PopulationModel model{0.1, 0.05};
    std::uint64_t seed = montecarlo::cell_seed(1, 2);
};

void BM_Serial(benchmark::State& state)
{
    const Cell cell;
    std::vector<montecarlo::ReplicationOutcome> out(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        montecarlo::run_replications_serial(cell.param, cell.r, cell.model, cell.seed, 0, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Parallel(benchmark::State& state)
{
    const Cell cell;
    std::vector<montecarlo::ReplicationOutcome> out(static_cast<std::size_t>(state.range(0)));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        montecarlo::run_replications_parallel(cell.param, cell.r, cell.model, cell.seed, 0, out,
                                              workers);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_Serial)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)
    ->ArgsProduct({{4096}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
