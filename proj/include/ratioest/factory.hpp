// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "ratioest/population.hpp"
#include "ratioest/rng.hpp"
#include "ratioest/target.hpp"

namespace ratioest {

/// Result of one probability transformation: the output bit and how many
/// observations of each population it used.
struct FactoryOutcome {
    bool y = false;
    std::uint64_t used1 = 0;
    std::uint64_t used2 = 0;
};

inline constexpr std::uint64_t kDefaultIterationCap = 1'000'000'000;

/// Coin-flip transform: pick a population at random, observe it, repeat until
/// a success; y = 1 iff the success came from population 1.
/// P(y = 1) = p1 / (p1 + p2).
FactoryOutcome transform_rr(PairedSampleLedger& ledger, FairCoin& coin,
                            std::uint64_t iteration_cap = kDefaultIterationCap);

/// Paired transform: observe both populations until they disagree;
/// y = the population-1 bit. P(y = 1) = p1(1-p2) / (p1(1-p2) + p2(1-p1)).
FactoryOutcome transform_or(PairedSampleLedger& ledger,
                            std::uint64_t iteration_cap = kDefaultIterationCap);

/// Dispatches on the target: coin-flip transform for RR/LRR, paired for OR/LOR.
inline FactoryOutcome transform(TargetParameter param, PairedSampleLedger& ledger,
                                FairCoin& coin,
                                std::uint64_t iteration_cap = kDefaultIterationCap)
{
    return param.uses_risk_transform() ? transform_rr(ledger, coin, iteration_cap)
                                       : transform_or(ledger, iteration_cap);
}

}  // namespace ratioest
