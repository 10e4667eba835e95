// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratioest/numeric.hpp"
#include "ratioest/population.hpp"
#include "ratioest/target.hpp"

namespace ratioest::montecarlo {

/// One grid point: what is estimated, the target accuracy, and the
/// population probabilities (with rho and R kept alongside for reporting).
struct CellSpec {
    TargetParameter param{ParamKind::RR};
    double mu_bar = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double rho = 0.0;
    double bigR = 0.0;
    bool feasible = true;

    static CellSpec from_probabilities(TargetParameter param, double mu_bar, double p1,
                                       double p2);
    /// Infeasible (rho, R) yields feasible == false instead of throwing.
    static CellSpec from_rho_ratio(TargetParameter param, double mu_bar, double rho,
                                   double bigR);
};

struct CellProbabilities {
    double p1;
    double p2;
};

/// p1 = rho sqrt(R), p2 = rho / sqrt(R). Throws InfeasibleCell unless both
/// land strictly inside (0,1).
CellProbabilities resolve_cell(double rho, double bigR);

/// Content hash of a cell; the same cell gets the same streams wherever it
/// appears in a grid.
std::uint64_t cell_id(const CellSpec& spec) noexcept;
std::uint64_t cell_seed(std::uint64_t master_seed, std::uint64_t cell_id) noexcept;
std::uint64_t replication_key(std::uint64_t cell_seed, std::uint64_t replication) noexcept;

/// What one estimation run reports back to the harness.
struct ReplicationOutcome {
    double estimate = 0.0;
    std::uint64_t consumed1 = 0;
    std::uint64_t consumed2 = 0;
    std::uint64_t pairs = 0;

    friend bool operator==(const ReplicationOutcome&, const ReplicationOutcome&) = default;
};

/// One full estimation on simulated populations keyed by `key`.
ReplicationOutcome simulate_replication(TargetParameter param, std::uint64_t r,
                                        const PopulationModel& model, std::uint64_t key);

/// Replications first .. first + out.size() - 1, one after another.
/// Reference implementation for the parallel kernel.
void run_replications_serial(TargetParameter param, std::uint64_t r,
                             const PopulationModel& model, std::uint64_t cell_seed,
                             std::uint64_t first, std::span<ReplicationOutcome> out);

/// Same outputs as run_replications_serial, computed with `workers` OpenMP
/// threads. Outputs are indexed by replication, so the schedule never shows.
void run_replications_parallel(TargetParameter param, std::uint64_t r,
                               const PopulationModel& model, std::uint64_t cell_seed,
                               std::uint64_t first, std::span<ReplicationOutcome> out,
                               int workers);

/// Aggregate over all replications of one cell.
struct CellStatistics {
    double p1 = 0.0;
    double p2 = 0.0;
    std::uint64_t r = 0;
    std::uint64_t replications = 0;
    std::uint64_t cell_seed = 0;
    double true_value = 0.0;
    double mean_estimate = 0.0;
    double se_mean = 0.0;
    double mse_or_relmse = 0.0;  // relative MSE for RR/OR, MSE for LRR/LOR
    double se_mse = 0.0;
    double mean_consumed1 = 0.0;
    double se_consumed1 = 0.0;
    double mean_consumed2 = 0.0;
    double se_consumed2 = 0.0;
    double mean_pairs = 0.0;
    double se_pairs = 0.0;
    double sef = 0.0;
    double se_sef = 0.0;
    double efficiency = 0.0;
    double se_efficiency = 0.0;

    friend bool operator==(const CellStatistics&, const CellStatistics&) = default;
};

/// Streaming aggregation in replication order. Sums of deviations from the
/// first replication are kept with compensated summation.
class CellAccumulator {
public:
    CellAccumulator(TargetParameter param, double p1, double p2);

    void add(const ReplicationOutcome& outcome);
    std::uint64_t count() const noexcept { return n_; }

    /// Needs at least two replications.
    CellStatistics finish(std::uint64_t r, std::uint64_t cell_seed) const;

private:
    TargetParameter param_;
    double p1_;
    double p2_;
    double theta_;
    std::uint64_t n_ = 0;

    enum Var { Est, Err, C1, C2, Pairs, Total, kVars };
    double origin_[kVars] = {};
    // Σd and Σd² per variable, plus the two cross products the SEs need.
    CompensatedSum sum_[kVars];
    CompensatedSum sq_[kVars];
    CompensatedSum cross_total_pairs_;
    CompensatedSum cross_pairs_err_;
};

enum class Kernel { Parallel, Serial };

struct RunOptions {
    int workers = 0;  // 0: default_worker_count()
    Kernel kernel = Kernel::Parallel;
    std::uint64_t chunk = 8192;
};

/// RATIOEST_WORKERS if set and positive, else the OpenMP default.
int default_worker_count();

CellStatistics run_cell(const CellSpec& spec, std::uint64_t replications,
                        std::uint64_t master_seed, const RunOptions& options = {});

CellStatistics run_cell(TargetParameter param, double mu_bar, double rho, double bigR,
                        std::uint64_t replications, std::uint64_t master_seed,
                        const RunOptions& options = {});

/// Grid of cells. When `probability_pairs` is non-empty it replaces the
/// (rho, R) product. Iteration order: mu_bar, then R, then rho (or the pair
/// list in its given order).
struct SimulationPlan {
    TargetParameter param{ParamKind::RR};
    std::vector<double> mu_bars;
    std::vector<double> rhos;
    std::vector<double> bigRs;
    std::vector<CellProbabilities> probability_pairs;
    std::uint64_t replications = 100000;
    std::uint64_t master_seed = 0;

    std::vector<CellSpec> cells() const;
};

enum class CellStatus { Ok, Infeasible, NumericFailure };

struct GridRow {
    CellSpec spec;
    std::uint64_t r = 0;
    std::uint64_t replications = 0;
    std::uint64_t master_seed = 0;
    CellStatus status = CellStatus::Ok;
    std::string message;
    std::optional<CellStatistics> stats;
};

/// Every cell of the plan, in plan order. Failures are recorded per row.
std::vector<GridRow> run_grid(const SimulationPlan& plan, const RunOptions& options = {});

}  // namespace ratioest::montecarlo
