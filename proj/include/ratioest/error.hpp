// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ratioest {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Out-of-range parameters or violated preconditions.
class InvalidConfig : public Error {
public:
    using Error::Error;
};

/// Iteration cap hit, overflow of an intermediate count, or a series that
/// failed to converge within its limit.
class NumericFailure : public Error {
public:
    using Error::Error;
};

/// A (rho, R) grid point that maps outside (0,1)^2.
class InfeasibleCell : public Error {
public:
    using Error::Error;
};

/// Tallies of a paired-sample ledger at a point in time.
struct LedgerCounts {
    std::uint64_t consumed1 = 0;
    std::uint64_t consumed2 = 0;
    std::uint64_t pairs_drawn = 0;
    std::uint64_t surplus1 = 0;
    std::uint64_t surplus2 = 0;

    friend bool operator==(const LedgerCounts&, const LedgerCounts&) = default;
};

/// How far an estimation run got before its data ran out.
struct EstimationProgress {
    int phase = 1;                 // 1: counting successes, 2: counting failures
    std::uint64_t samples_phase1 = 0;
    std::uint64_t samples_phase2 = 0;
    std::uint64_t successes = 0;   // within phase 1
    std::uint64_t failures = 0;    // within phase 2
};

/// A replay source ran out of recorded pairs. Carries the ledger snapshot at
/// the moment of exhaustion and, when raised from inside an estimation run,
/// the partial progress of that run.
class ReplayExhausted : public Error {
public:
    explicit ReplayExhausted(LedgerCounts ledger,
                             std::optional<EstimationProgress> progress = {});

    const LedgerCounts& ledger() const noexcept { return ledger_; }
    const std::optional<EstimationProgress>& progress() const noexcept
    {
        return progress_;
    }

private:
    LedgerCounts ledger_;
    std::optional<EstimationProgress> progress_;
};

}  // namespace ratioest
