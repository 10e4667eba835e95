// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <exception>
#include <span>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ratioest/estimator.hpp"
#include "ratioest/montecarlo.hpp"

namespace ratioest::montecarlo {

ReplicationOutcome simulate_replication(TargetParameter param, std::uint64_t r,
                                        const PopulationModel& model, std::uint64_t key)
{
    PairedSampleLedger ledger = make_simulated_ledger(model, key);
    FairCoin coin(CounterStream(key, Substream::Coin));
    const EstimatorConfig config{0.0, r};
    const EstimationResult result = run_estimation(param, config, ledger, coin);
    return {result.estimate, result.consumed1, result.consumed2, result.pairs};
}

void run_replications_serial(TargetParameter param, std::uint64_t r,
                             const PopulationModel& model, std::uint64_t cell_seed,
                             std::uint64_t first, std::span<ReplicationOutcome> out)
{
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = simulate_replication(param, r, model, replication_key(cell_seed, first + i));
    }
}

void run_replications_parallel(TargetParameter param, std::uint64_t r,
                               const PopulationModel& model, std::uint64_t cell_seed,
                               std::uint64_t first, std::span<ReplicationOutcome> out,
                               int workers)
{
    const auto count = static_cast<std::int64_t>(out.size());
    // Exceptions cannot leave the parallel region; keep the lowest-index one.
    std::exception_ptr failure;
    std::int64_t failure_index = count;

#pragma omp parallel for schedule(dynamic, 16) num_threads(workers > 0 ? workers : 1)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = simulate_replication(
                param, r, model, replication_key(cell_seed, first + static_cast<std::uint64_t>(i)));
        } catch (...) {
#pragma omp critical(ratioest_replication_failure)
            {
                if (i < failure_index) {
                    failure_index = i;
                    failure = std::current_exception();
                }
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace ratioest::montecarlo
