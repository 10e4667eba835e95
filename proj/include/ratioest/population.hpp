// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ratioest/error.hpp"
#include "ratioest/rng.hpp"

namespace ratioest {

enum class Population : int { First = 1, Second = 2 };

/// Success probabilities of the two populations, both strictly inside (0,1).
class PopulationModel {
public:
    PopulationModel(double p1, double p2);

    double p1() const noexcept { return p1_; }
    double p2() const noexcept { return p2_; }

private:
    double p1_;
    double p2_;
};

/// Quantities derived from (p1, p2): geometric mean, ratio and maximum.
struct DerivedParams {
    double rho;
    double bigR;
    double p_max;

    static DerivedParams from(const PopulationModel& model) noexcept;
};

/// One recorded pair of observations, one bit per population.
struct ObservationPair {
    std::uint8_t first = 0;
    std::uint8_t second = 0;

    friend bool operator==(const ObservationPair&, const ObservationPair&) = default;
};

/// A stream of Bernoulli observations from one population: either simulated
/// from a probability and a counter-based stream, or replayed from a finite
/// recorded sequence.
class ObservationSource {
public:
    static ObservationSource simulated(double p, CounterStream stream);
    static ObservationSource replay(std::vector<std::uint8_t> bits);

    bool is_replay() const noexcept { return replay_; }

    /// False only for a replay source whose recorded bits are all consumed.
    bool available() const noexcept { return !replay_ || cursor_ < bits_.size(); }

    /// Next observation. Caller must have checked available().
    bool next() noexcept
    {
        if (!replay_) {
            return (stream_.next_u64() >> 11) < threshold_;
        }
        return bits_[cursor_++] != 0;
    }

    std::size_t remaining() const noexcept
    {
        return replay_ ? bits_.size() - cursor_ : SIZE_MAX;
    }

private:
    ObservationSource() = default;

    bool replay_ = false;
    // simulated: u < p with u = k * 2^-53  <=>  k < ceil(p * 2^53)
    std::uint64_t threshold_ = 0;
    CounterStream stream_;
    std::vector<std::uint8_t> bits_;
    std::size_t cursor_ = 0;
};

/// FIFO of banked observations.
class BitQueue {
public:
    bool empty() const noexcept { return head_ == buf_.size(); }
    std::size_t size() const noexcept { return buf_.size() - head_; }

    void push(bool bit) { buf_.push_back(bit ? 1 : 0); }

    bool pop() noexcept
    {
        const bool bit = buf_[head_++] != 0;
        if (head_ == buf_.size()) {
            buf_.clear();
            head_ = 0;
        }
        return bit;
    }

private:
    std::vector<std::uint8_t> buf_;
    std::size_t head_ = 0;
};

/// Conservative pair sampling. Observations are requested per population; a
/// new pair is drawn only when the requested population has no banked
/// observation, and the other half of the pair is banked for later.
///
/// Invariants after every draw: min(|surplus1|, |surplus2|) == 0 and
/// pairs_drawn == consumed_i + |surplus_i|, hence
/// pairs_drawn == max(consumed1, consumed2).
class PairedSampleLedger {
public:
    PairedSampleLedger(ObservationSource first, ObservationSource second);

    /// Next observation from `population`. Throws ReplayExhausted (with the
    /// ledger snapshot) when a new pair is needed and a replay source is empty.
    bool draw(Population population)
    {
        if (population == Population::First) {
            if (!surplus1_.empty()) {
                ++consumed1_;
                return surplus1_.pop();
            }
            const ObservationPair pair = draw_pair();
            surplus2_.push(pair.second != 0);
            ++consumed1_;
            return pair.first != 0;
        }
        if (!surplus2_.empty()) {
            ++consumed2_;
            return surplus2_.pop();
        }
        const ObservationPair pair = draw_pair();
        surplus1_.push(pair.first != 0);
        ++consumed2_;
        return pair.second != 0;
    }

    LedgerCounts counts() const noexcept
    {
        return {consumed1_, consumed2_, pairs_drawn_, surplus1_.size(), surplus2_.size()};
    }

    /// Every pair drawn from now on is appended to `sink` (nullptr stops).
    void record_to(std::vector<ObservationPair>* sink) noexcept { recorder_ = sink; }

private:
    ObservationPair draw_pair()
    {
        if (!first_.available() || !second_.available()) {
            exhausted();
        }
        ObservationPair pair{static_cast<std::uint8_t>(first_.next()),
                             static_cast<std::uint8_t>(second_.next())};
        ++pairs_drawn_;
        if (recorder_ != nullptr) {
            recorder_->push_back(pair);
        }
        return pair;
    }

    [[noreturn]] void exhausted();

    ObservationSource first_;
    ObservationSource second_;
    BitQueue surplus1_;
    BitQueue surplus2_;
    std::uint64_t consumed1_ = 0;
    std::uint64_t consumed2_ = 0;
    std::uint64_t pairs_drawn_ = 0;
    std::vector<ObservationPair>* recorder_ = nullptr;
};

/// Ledger over two simulated populations with streams keyed by `key`.
PairedSampleLedger make_simulated_ledger(const PopulationModel& model, std::uint64_t key);

/// Ledger over recorded pairs (the k-th pair supplies the k-th draw).
PairedSampleLedger make_replay_ledger(std::span<const ObservationPair> pairs);

}  // namespace ratioest
