// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratioest/population.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ratioest {

namespace {

bool open_unit(double p)
{
    return p > 0.0 && p < 1.0;
}

}  // namespace

ReplayExhausted::ReplayExhausted(LedgerCounts ledger, std::optional<EstimationProgress> progress)
    : Error("replay data exhausted after " + std::to_string(ledger.pairs_drawn) + " pairs"),
      ledger_(ledger),
      progress_(progress)
{}

PopulationModel::PopulationModel(double p1, double p2) : p1_(p1), p2_(p2)
{
    if (!open_unit(p1) || !open_unit(p2)) {
        throw InvalidConfig("population probabilities must lie in (0,1), got p1=" +
                            std::to_string(p1) + " p2=" + std::to_string(p2));
    }
}

DerivedParams DerivedParams::from(const PopulationModel& model) noexcept
{
    const double p1 = model.p1();
    const double p2 = model.p2();
    return {std::sqrt(p1 * p2), p1 / p2, std::max(p1, p2)};
}

ObservationSource ObservationSource::simulated(double p, CounterStream stream)
{
    if (!open_unit(p)) {
        throw InvalidConfig("simulated source needs p in (0,1)");
    }
    ObservationSource src;
    src.replay_ = false;
    // p * 2^53 is exact; k < x <=> k < ceil(x) for integer k.
    src.threshold_ = static_cast<std::uint64_t>(std::ceil(std::ldexp(p, 53)));
    src.stream_ = stream;
    return src;
}

ObservationSource ObservationSource::replay(std::vector<std::uint8_t> bits)
{
    ObservationSource src;
    src.replay_ = true;
    src.bits_ = std::move(bits);
    return src;
}

PairedSampleLedger::PairedSampleLedger(ObservationSource first, ObservationSource second)
    : first_(std::move(first)), second_(std::move(second))
{}

void PairedSampleLedger::exhausted()
{
    throw ReplayExhausted(counts());
}

PairedSampleLedger make_simulated_ledger(const PopulationModel& model, std::uint64_t key)
{
    return PairedSampleLedger(
        ObservationSource::simulated(model.p1(), CounterStream(key, Substream::Population1)),
        ObservationSource::simulated(model.p2(), CounterStream(key, Substream::Population2)));
}

PairedSampleLedger make_replay_ledger(std::span<const ObservationPair> pairs)
{
    std::vector<std::uint8_t> first;
    std::vector<std::uint8_t> second;
    first.reserve(pairs.size());
    second.reserve(pairs.size());
    for (const ObservationPair& pair : pairs) {
        first.push_back(pair.first);
        second.push_back(pair.second);
    }
    return PairedSampleLedger(ObservationSource::replay(std::move(first)),
                              ObservationSource::replay(std::move(second)));
}

}  // namespace ratioest
