// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratioest/estimator.hpp"

#include <cmath>
#include <string>

namespace ratioest {

std::uint64_t required_successes(double mu_bar, TargetParameter param)
{
    if (!(mu_bar > 0.0) || !std::isfinite(mu_bar)) {
        throw InvalidConfig("target accuracy must be a positive finite number");
    }
    const double r = std::ceil(1.0 / mu_bar + param.c());
    if (!(r < 0x1.0p53)) {
        throw InvalidConfig("target accuracy too small: success threshold overflows");
    }
    return static_cast<std::uint64_t>(r);
}

double harmonic(std::uint64_t k)
{
    HarmonicAccumulator acc;
    acc.advance_to(k);
    return acc.value();
}

double point_estimate(TargetParameter param, std::uint64_t r, std::uint64_t n_prime,
                      std::uint64_t n_dprime)
{
    const auto alpha = static_cast<std::uint64_t>(param.alpha());
    if (r < 2 || n_prime < r + alpha || n_dprime < r - alpha) {
        throw InvalidConfig("point_estimate needs r >= 2, N' >= r+alpha, N'' >= r-alpha");
    }
    if (param.is_logarithmic()) {
        return harmonic(n_dprime - 1) - harmonic(n_prime - 1);
    }
    const auto rd = static_cast<double>(r);
    return rd * static_cast<double>(n_dprime) /
           ((rd - 1.0) * static_cast<double>(n_prime - 1));
}

EstimationResult run_estimation(TargetParameter param, const EstimatorConfig& config,
                                PairedSampleLedger& ledger, FairCoin& coin,
                                std::uint64_t iteration_cap)
{
    const std::uint64_t r = config.r;
    if (r < 2) {
        throw InvalidConfig("success threshold r must be at least 2");
    }
    const auto alpha = static_cast<std::uint64_t>(param.alpha());
    const std::uint64_t successes_needed = r + alpha;
    const std::uint64_t failures_needed = r - alpha;

    // H(N'-1) and H(N''-1) are kept as running sums while the counts grow.
    HarmonicAccumulator h_prime;
    HarmonicAccumulator h_dprime;
    EstimationProgress progress;
    try {
        while (progress.successes < successes_needed) {
            h_prime.advance_to(progress.samples_phase1);
            const FactoryOutcome out = transform(param, ledger, coin, iteration_cap);
            ++progress.samples_phase1;
            progress.successes += out.y ? 1 : 0;
        }
        progress.phase = 2;
        while (progress.failures < failures_needed) {
            h_dprime.advance_to(progress.samples_phase2);
            const FactoryOutcome out = transform(param, ledger, coin, iteration_cap);
            ++progress.samples_phase2;
            progress.failures += out.y ? 0 : 1;
        }
    } catch (const ReplayExhausted& ex) {
        throw ReplayExhausted(ex.ledger(), progress);
    }

    EstimationResult result;
    result.r = r;
    result.n_prime = progress.samples_phase1;
    result.n_dprime = progress.samples_phase2;
    if (param.is_logarithmic()) {
        result.estimate = h_dprime.value() - h_prime.value();
    } else {
        result.estimate = point_estimate(param, r, result.n_prime, result.n_dprime);
    }
    const LedgerCounts counts = ledger.counts();
    result.consumed1 = counts.consumed1;
    result.consumed2 = counts.consumed2;
    result.pairs = counts.pairs_drawn;
    result.surplus1 = counts.surplus1;
    result.surplus2 = counts.surplus2;
    return result;
}

}  // namespace ratioest
