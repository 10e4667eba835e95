// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "ratioest/factory.hpp"
#include "ratioest/numeric.hpp"
#include "ratioest/population.hpp"
#include "ratioest/target.hpp"

namespace ratioest {

/// Smallest success threshold that guarantees the target accuracy:
/// r = ceil(1/mu_bar + c). Throws InvalidConfig unless mu_bar > 0.
std::uint64_t required_successes(double mu_bar, TargetParameter param);

/// Target accuracy and the success threshold derived from it.
struct EstimatorConfig {
    double target_accuracy;
    std::uint64_t r;

    static EstimatorConfig from_accuracy(double mu_bar, TargetParameter param)
    {
        return {mu_bar, required_successes(mu_bar, param)};
    }
};

/// H_k = 1 + 1/2 + ... + 1/k with compensated summation; H_0 = 0.
double harmonic(std::uint64_t k);

/// Running harmonic number for counts that grow one at a time. Produces the
/// same bits as harmonic(k) for every k it passes through.
class HarmonicAccumulator {
public:
    void advance_to(std::uint64_t k)
    {
        while (k_ < k) {
            ++k_;
            sum_ += 1.0 / static_cast<double>(k_);
        }
    }
    std::uint64_t index() const noexcept { return k_; }
    double value() const noexcept { return sum_.value(); }

private:
    std::uint64_t k_ = 0;
    CompensatedSum sum_;
};

/// RR/OR: r N'' / ((r-1)(N'-1)).  LRR/LOR: H(N''-1) - H(N'-1).
/// Requires r >= 2, N' >= r + alpha, N'' >= r - alpha.
double point_estimate(TargetParameter param, std::uint64_t r, std::uint64_t n_prime,
                      std::uint64_t n_dprime);

struct EstimationResult {
    std::uint64_t r = 0;
    std::uint64_t n_prime = 0;   // transformed samples until r + alpha successes
    std::uint64_t n_dprime = 0;  // transformed samples until r - alpha failures
    double estimate = 0.0;
    std::uint64_t consumed1 = 0;
    std::uint64_t consumed2 = 0;
    std::uint64_t pairs = 0;
    std::uint64_t surplus1 = 0;  // banked but never used
    std::uint64_t surplus2 = 0;
};

/// Two inverse-binomial phases over the transformed stream, then the point
/// estimate. ReplayExhausted raised from the ledger is rethrown with the
/// run's partial progress attached.
EstimationResult run_estimation(TargetParameter param, const EstimatorConfig& config,
                                PairedSampleLedger& ledger, FairCoin& coin,
                                std::uint64_t iteration_cap = kDefaultIterationCap);

}  // namespace ratioest
