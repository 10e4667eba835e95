// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <utility>

namespace ratioest::testing {

/// Brute-force distribution of (M1, M2) for the coin-flip estimator, found by
/// pushing probability mass through the algorithm step by step. Each step
/// picks a population with probability 1/2 and observes one bit. Mass whose
/// n1 + n2 would exceed `max_total` is dropped, so every returned cell is
/// exact.
inline std::map<std::pair<std::uint64_t, std::uint64_t>, double>
enumerate_consumption(std::uint64_t r, int alpha, double p1, double p2, std::uint64_t max_total)
{
    const std::uint64_t need_success = r + static_cast<std::uint64_t>(alpha);
    const std::uint64_t need_failure = r - static_cast<std::uint64_t>(alpha);
    // (phase, count within phase, n1, n2) -> probability
    using State = std::tuple<int, std::uint64_t, std::uint64_t, std::uint64_t>;
    std::map<State, double> frontier{{State{1, 0, 0, 0}, 1.0}};
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> done;

    while (!frontier.empty()) {
        std::map<State, double> next;
        for (const auto& [state, mass] : frontier) {
            const auto [phase, count, n1, n2] = state;
            if (n1 + n2 + 1 > max_total) {
                continue;
            }
            // a transform output y moves the phase counter
            const auto emit = [&](bool y, std::uint64_t a, std::uint64_t b, double w) {
                int ph = phase;
                std::uint64_t c = count + ((ph == 1) == y ? 1 : 0);
                if (ph == 1 && c == need_success) {
                    ph = 2;
                    c = 0;
                }
                if (ph == 2 && c == need_failure) {
                    done[{a, b}] += w;
                    return;
                }
                next[State{ph, c, a, b}] += w;
            };
            emit(true, n1 + 1, n2, mass * 0.5 * p1);   // success from population 1
            emit(false, n1, n2 + 1, mass * 0.5 * p2);  // success from population 2
            // a failure leaves the transform running
            next[State{phase, count, n1 + 1, n2}] += mass * 0.5 * (1 - p1);
            next[State{phase, count, n1, n2 + 1}] += mass * 0.5 * (1 - p2);
        }
        frontier = std::move(next);
    }
    return done;
}

}  // namespace ratioest::testing
