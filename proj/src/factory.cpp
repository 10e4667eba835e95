// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratioest/factory.hpp"

#include <string>

namespace ratioest {

FactoryOutcome transform_rr(PairedSampleLedger& ledger, FairCoin& coin,
                            std::uint64_t iteration_cap)
{
    std::uint64_t used1 = 0;
    std::uint64_t used2 = 0;
    for (std::uint64_t iter = 0; iter < iteration_cap; ++iter) {
        // heads -> population 1
        if (coin.flip()) {
            ++used1;
            if (ledger.draw(Population::First)) {
                return {true, used1, used2};
            }
        } else {
            ++used2;
            if (ledger.draw(Population::Second)) {
                return {false, used1, used2};
            }
        }
    }
    throw NumericFailure("coin-flip transform exceeded " + std::to_string(iteration_cap) +
                         " iterations");
}

FactoryOutcome transform_or(PairedSampleLedger& ledger, std::uint64_t iteration_cap)
{
    for (std::uint64_t iter = 1; iter <= iteration_cap; ++iter) {
        const bool first = ledger.draw(Population::First);
        const bool second = ledger.draw(Population::Second);
        if (first != second) {
            return {first, iter, iter};
        }
    }
    throw NumericFailure("paired transform exceeded " + std::to_string(iteration_cap) +
                         " iterations");
}

}  // namespace ratioest
