// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace ratioest {

//---------------------------------------------------------------------------//
// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//---------------------------------------------------------------------------//
namespace philox {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

constexpr Counter round(Counter ctr, Key key) noexcept
{
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

/// Ten-round Philox bijection of `ctr` under `key`.
constexpr Counter block(Counter ctr, Key key) noexcept
{
    ctr = round(ctr, key);
    for (int i = 1; i < 10; ++i) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
        ctr = round(ctr, key);
    }
    return ctr;
}

}  // namespace philox

/// SplitMix64 finalizer; used to hash seeds, never as a stream generator.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Stateless key derivation: every (master, cell, replication) triple gets
/// its own Philox key, independent of execution order.
constexpr std::uint64_t derive_key(std::uint64_t master_seed,
                                   std::uint64_t cell_id,
                                   std::uint64_t replication) noexcept
{
    return mix64(mix64(mix64(master_seed) ^ cell_id) ^ replication);
}

/// Substream identifiers within one replication key.
enum class Substream : std::uint32_t { Population1 = 0, Population2 = 1, Coin = 2 };

/// A sequential view of Philox output: block counter {lo, hi, substream, 0}
/// under a 64-bit key. Two 64-bit words per block.
class CounterStream {
public:
    constexpr CounterStream() noexcept = default;
    constexpr CounterStream(std::uint64_t key, Substream substream) noexcept
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
          substream_(static_cast<std::uint32_t>(substream))
    {}

    constexpr std::uint64_t next_u64() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const philox::Counter out = philox::block(
            {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
             substream_, 0u},
            key_);
        ++block_;
        spare_ = (std::uint64_t{out[3]} << 32) | out[2];
        has_spare_ = true;
        return (std::uint64_t{out[1]} << 32) | out[0];
    }

    /// Uniform on [0,1) with 53 random bits.
    constexpr double next_uniform() noexcept
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    constexpr std::uint64_t blocks_used() const noexcept { return block_; }

private:
    philox::Key key_{0, 0};
    std::uint32_t substream_ = 0;
    std::uint64_t block_ = 0;
    std::uint64_t spare_ = 0;
    bool has_spare_ = false;
};

/// Fair coin drawing one bit at a time from a 64-bit word.
class FairCoin {
public:
    constexpr FairCoin() noexcept = default;
    constexpr explicit FairCoin(CounterStream stream) noexcept : stream_(stream) {}

    constexpr bool flip() noexcept
    {
        if (bits_left_ == 0) {
            word_ = stream_.next_u64();
            bits_left_ = 64;
        }
        const bool bit = (word_ & 1u) != 0;
        word_ >>= 1;
        --bits_left_;
        return bit;
    }

private:
    CounterStream stream_;
    std::uint64_t word_ = 0;
    int bits_left_ = 0;
};

}  // namespace ratioest
