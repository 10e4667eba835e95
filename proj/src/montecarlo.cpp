// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratioest/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ratioest/analysis.hpp"
#include "ratioest/error.hpp"
#include "ratioest/estimator.hpp"
#include "ratioest/rng.hpp"

namespace ratioest::montecarlo {

CellSpec CellSpec::from_probabilities(TargetParameter param, double mu_bar, double p1, double p2)
{
    CellSpec spec;
    spec.param = param;
    spec.mu_bar = mu_bar;
    spec.p1 = p1;
    spec.p2 = p2;
    spec.rho = std::sqrt(p1 * p2);
    spec.bigR = p1 / p2;
    spec.feasible = p1 > 0.0 && p1 < 1.0 && p2 > 0.0 && p2 < 1.0;
    return spec;
}

CellSpec CellSpec::from_rho_ratio(TargetParameter param, double mu_bar, double rho, double bigR)
{
    CellSpec spec;
    spec.param = param;
    spec.mu_bar = mu_bar;
    spec.rho = rho;
    spec.bigR = bigR;
    try {
        const CellProbabilities probs = resolve_cell(rho, bigR);
        spec.p1 = probs.p1;
        spec.p2 = probs.p2;
        spec.feasible = true;
    } catch (const InfeasibleCell&) {
        spec.p1 = rho * std::sqrt(bigR);
        spec.p2 = rho / std::sqrt(bigR);
        spec.feasible = false;
    }
    return spec;
}

CellProbabilities resolve_cell(double rho, double bigR)
{
    if (!(rho > 0.0) || !(bigR > 0.0) || !std::isfinite(rho) || !std::isfinite(bigR)) {
        throw InfeasibleCell("rho and R must be positive and finite");
    }
    const double root = std::sqrt(bigR);
    const double p1 = rho * root;
    const double p2 = rho / root;
    if (!(p1 < 1.0 && p2 < 1.0)) {
        throw InfeasibleCell("cell rho=" + std::to_string(rho) + " R=" + std::to_string(bigR) +
                             " maps outside (0,1): p1=" + std::to_string(p1) +
                             " p2=" + std::to_string(p2));
    }
    return {p1, p2};
}

std::uint64_t cell_id(const CellSpec& spec) noexcept
{
    std::uint64_t h = mix64(static_cast<std::uint64_t>(spec.param.kind()) + 1);
    h = mix64(h ^ std::bit_cast<std::uint64_t>(spec.mu_bar));
    h = mix64(h ^ std::bit_cast<std::uint64_t>(spec.p1));
    return mix64(h ^ std::bit_cast<std::uint64_t>(spec.p2));
}

std::uint64_t cell_seed(std::uint64_t master_seed, std::uint64_t id) noexcept
{
    return mix64(mix64(master_seed) ^ id);
}

std::uint64_t replication_key(std::uint64_t seed, std::uint64_t replication) noexcept
{
    return mix64(seed ^ replication);
}

//---------------------------------------------------------------------------//
// Aggregation
//---------------------------------------------------------------------------//

CellAccumulator::CellAccumulator(TargetParameter param, double p1, double p2)
    : param_(param), p1_(p1), p2_(p2), theta_(analysis::true_parameter(param, p1, p2))
{}

void CellAccumulator::add(const ReplicationOutcome& outcome)
{
    double err = outcome.estimate - theta_;
    if (!param_.is_logarithmic()) {
        err /= theta_;
    }
    const double values[kVars] = {
        outcome.estimate,
        err * err,
        static_cast<double>(outcome.consumed1),
        static_cast<double>(outcome.consumed2),
        static_cast<double>(outcome.pairs),
        static_cast<double>(outcome.consumed1 + outcome.consumed2),
    };
    if (n_ == 0) {
        std::copy(std::begin(values), std::end(values), std::begin(origin_));
    }
    double dev[kVars];
    for (int v = 0; v < kVars; ++v) {
        dev[v] = values[v] - origin_[v];
        sum_[v] += dev[v];
        sq_[v] += dev[v] * dev[v];
    }
    cross_total_pairs_ += dev[Total] * dev[Pairs];
    cross_pairs_err_ += dev[Pairs] * dev[Err];
    ++n_;
}

CellStatistics CellAccumulator::finish(std::uint64_t r, std::uint64_t seed) const
{
    if (n_ < 2) {
        throw InvalidConfig("cell statistics need at least two replications");
    }
    const auto n = static_cast<double>(n_);
    const auto mean = [&](int v) { return origin_[v] + sum_[v].value() / n; };
    const auto var = [&](int v) {
        const double s = sum_[v].value();
        return std::max(0.0, (sq_[v].value() - s * s / n) / (n - 1.0));
    };
    const auto cov = [&](const CompensatedSum& cross, int a, int b) {
        return (cross.value() - sum_[a].value() * sum_[b].value() / n) / (n - 1.0);
    };
    const auto se = [&](int v) { return std::sqrt(var(v) / n); };

    CellStatistics st;
    st.p1 = p1_;
    st.p2 = p2_;
    st.r = r;
    st.replications = n_;
    st.cell_seed = seed;
    st.true_value = theta_;
    st.mean_estimate = mean(Est);
    st.se_mean = se(Est);
    st.mse_or_relmse = mean(Err);
    st.se_mse = se(Err);
    st.mean_consumed1 = mean(C1);
    st.se_consumed1 = se(C1);
    st.mean_consumed2 = mean(C2);
    st.se_consumed2 = se(C2);
    st.mean_pairs = mean(Pairs);
    st.se_pairs = se(Pairs);

    const double total = mean(Total);
    const double pairs = st.mean_pairs;
    st.sef = total / (2.0 * pairs);
    // Delta method on log(sef) = log(total) - log(2 pairs).
    const double sef_rel_var = var(Total) / (total * total) + var(Pairs) / (pairs * pairs) -
                               2.0 * cov(cross_total_pairs_, Total, Pairs) / (total * pairs);
    st.se_sef = st.sef * std::sqrt(std::max(0.0, sef_rel_var) / n);

    const double mse = st.mse_or_relmse;
    if (mse > 0.0) {
        const double abs_mse = param_.is_logarithmic() ? mse : mse * theta_ * theta_;
        st.efficiency = analysis::observed_efficiency(param_, p1_, p2_, pairs, abs_mse);
        // Delta method on log(eff) = const - log(pairs) - log(mse).
        const double eff_rel_var = var(Pairs) / (pairs * pairs) + var(Err) / (mse * mse) +
                                   2.0 * cov(cross_pairs_err_, Pairs, Err) / (pairs * mse);
        st.se_efficiency = st.efficiency * std::sqrt(std::max(0.0, eff_rel_var) / n);
    }
    return st;
}

//---------------------------------------------------------------------------//
// Cells and grids
//---------------------------------------------------------------------------//

int default_worker_count()
{
    if (const char* env = std::getenv("RATIOEST_WORKERS")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) {
            return static_cast<int>(value);
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

CellStatistics run_cell(const CellSpec& spec, std::uint64_t replications,
                        std::uint64_t master_seed, const RunOptions& options)
{
    if (!spec.feasible) {
        throw InfeasibleCell("cell outside (0,1)^2");
    }
    if (replications < 2) {
        throw InvalidConfig("a cell needs at least two replications");
    }
    const PopulationModel model(spec.p1, spec.p2);
    const std::uint64_t r = required_successes(spec.mu_bar, spec.param);
    const std::uint64_t seed = cell_seed(master_seed, cell_id(spec));
    const int workers = options.workers > 0 ? options.workers : default_worker_count();
    const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk);

    CellAccumulator acc(spec.param, spec.p1, spec.p2);
    std::vector<ReplicationOutcome> buffer(std::min(chunk, replications));
    for (std::uint64_t first = 0; first < replications; first += chunk) {
        const std::uint64_t len = std::min(chunk, replications - first);
        const std::span<ReplicationOutcome> out(buffer.data(), len);
        if (options.kernel == Kernel::Serial) {
            run_replications_serial(spec.param, r, model, seed, first, out);
        } else {
            run_replications_parallel(spec.param, r, model, seed, first, out, workers);
        }
        for (const ReplicationOutcome& outcome : out) {
            acc.add(outcome);
        }
    }
    return acc.finish(r, seed);
}

CellStatistics run_cell(TargetParameter param, double mu_bar, double rho, double bigR,
                        std::uint64_t replications, std::uint64_t master_seed,
                        const RunOptions& options)
{
    const CellProbabilities probs = resolve_cell(rho, bigR);
    CellSpec spec = CellSpec::from_probabilities(param, mu_bar, probs.p1, probs.p2);
    spec.rho = rho;
    spec.bigR = bigR;
    return run_cell(spec, replications, master_seed, options);
}

std::vector<CellSpec> SimulationPlan::cells() const
{
    std::vector<CellSpec> out;
    for (double mu : mu_bars) {
        if (!probability_pairs.empty()) {
            for (const CellProbabilities& pp : probability_pairs) {
                out.push_back(CellSpec::from_probabilities(param, mu, pp.p1, pp.p2));
            }
            continue;
        }
        for (double bigR : bigRs) {
            for (double rho : rhos) {
                out.push_back(CellSpec::from_rho_ratio(param, mu, rho, bigR));
            }
        }
    }
    return out;
}

std::vector<GridRow> run_grid(const SimulationPlan& plan, const RunOptions& options)
{
    std::vector<GridRow> rows;
    for (const CellSpec& spec : plan.cells()) {
        GridRow row;
        row.spec = spec;
        row.replications = plan.replications;
        row.master_seed = plan.master_seed;
        row.r = required_successes(spec.mu_bar, spec.param);
        if (!spec.feasible) {
            row.status = CellStatus::Infeasible;
            row.message = "p1 or p2 outside (0,1)";
        } else {
            try {
                row.stats = run_cell(spec, plan.replications, plan.master_seed, options);
            } catch (const NumericFailure& ex) {
                row.status = CellStatus::NumericFailure;
                row.message = ex.what();
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ratioest::montecarlo
