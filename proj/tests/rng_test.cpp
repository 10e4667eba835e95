// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratioest/rng.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

using namespace ratioest;

// Known-answer vectors for Philox4x32-10.
TEST(Philox, KnownAnswerZero)
{
    const philox::Counter out = philox::block({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out[0], 0x6627e8d5u);
    EXPECT_EQ(out[1], 0xe169c58du);
    EXPECT_EQ(out[2], 0xbc57ac4cu);
    EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes)
{
    const philox::Counter out = philox::block(
        {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(out[0], 0x408f276du);
    EXPECT_EQ(out[1], 0x41c83b0eu);
    EXPECT_EQ(out[2], 0xa20bc7c6u);
    EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi)
{
    const philox::Counter out = philox::block(
        {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(out[0], 0xd16cfe09u);
    EXPECT_EQ(out[1], 0x94fdccebu);
    EXPECT_EQ(out[2], 0x5001e420u);
    EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(CounterStream, SameKeySameSequence)
{
    CounterStream a(42, Substream::Population1);
    CounterStream b(42, Substream::Population1);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(a.next_u64(), b.next_u64());
    }
    EXPECT_EQ(a.blocks_used(), 500u);
}

TEST(CounterStream, SubstreamsDiffer)
{
    CounterStream a(42, Substream::Population1);
    CounterStream b(42, Substream::Population2);
    CounterStream c(42, Substream::Coin);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 100; ++i) {
        seen.insert(a.next_u64());
        seen.insert(b.next_u64());
        seen.insert(c.next_u64());
    }
    EXPECT_EQ(seen.size(), 300u);
}

TEST(CounterStream, WordsComeFromBlockInOrder)
{
    CounterStream s(0x0123456789abcdefULL, Substream::Coin);
    const philox::Counter blk = philox::block({0, 0, 2, 0}, {0x89abcdefu, 0x01234567u});
    EXPECT_EQ(s.next_u64(), (std::uint64_t{blk[1]} << 32) | blk[0]);
    EXPECT_EQ(s.next_u64(), (std::uint64_t{blk[3]} << 32) | blk[2]);
}

TEST(CounterStream, UniformInUnitInterval)
{
    CounterStream s(7, Substream::Population1);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = s.next_uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // mean of U(0,1): sd of the sample mean is sqrt(1/12/n)
    EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(FairCoin, UsesEveryBitOfAWord)
{
    CounterStream raw(99, Substream::Coin);
    const std::uint64_t word = raw.next_u64();
    FairCoin coin(CounterStream(99, Substream::Coin));
    for (int i = 0; i < 64; ++i) {
        EXPECT_EQ(coin.flip(), ((word >> i) & 1u) != 0) << "bit " << i;
    }
}

TEST(FairCoin, Balanced)
{
    FairCoin coin(CounterStream(3, Substream::Coin));
    const int n = 1000000;
    int heads = 0;
    for (int i = 0; i < n; ++i) {
        heads += coin.flip() ? 1 : 0;
    }
    EXPECT_NEAR(heads, n / 2, 4.0 * std::sqrt(n * 0.25));
}

TEST(DeriveKey, DependsOnEveryComponent)
{
    const std::uint64_t k = derive_key(1, 2, 3);
    EXPECT_NE(k, derive_key(0, 2, 3));
    EXPECT_NE(k, derive_key(1, 0, 3));
    EXPECT_NE(k, derive_key(1, 2, 0));
    EXPECT_EQ(k, derive_key(1, 2, 3));
}
