// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "pmf_oracle.hpp"
#include "ratioest/analysis.hpp"
#include "ratioest/error.hpp"

using namespace ratioest;
using namespace ratioest::analysis;

TEST(JointPmf, HandEnumeratedCell)
{
    EXPECT_NEAR(joint_consumption_pmf(2, 1, 0.1, 0.3, 3, 1), 1.875e-5, 1e-15);
}

TEST(JointPmf, ZeroOutsideSupport)
{
    EXPECT_EQ(joint_consumption_pmf(2, 1, 0.1, 0.3, 2, 5), 0.0);
    EXPECT_EQ(joint_consumption_pmf(2, 1, 0.1, 0.3, 5, 0), 0.0);
    EXPECT_EQ(joint_consumption_pmf(3, 0, 0.1, 0.3, 5, 2), 0.0);
    EXPECT_GT(joint_consumption_pmf(3, 0, 0.1, 0.3, 3, 3), 0.0);
}

TEST(JointPmf, MatchesPathEnumeration)
{
    const std::uint64_t max_total = 14;
    for (int alpha : {0, 1}) {
        for (double p1 : {0.2, 0.5}) {
            for (double p2 : {0.2, 0.5}) {
                const auto oracle = ratioest::testing::enumerate_consumption(2, alpha, p1, p2, max_total);
                ConsumptionPmf pmf(2, alpha, p1, p2);
                std::size_t checked = 0;
                for (std::uint64_t n1 = 0; n1 <= max_total; ++n1) {
                    for (std::uint64_t n2 = 0; n1 + n2 <= max_total; ++n2) {
                        const auto it = oracle.find({n1, n2});
                        const double want = it == oracle.end() ? 0.0 : it->second;
                        const double got = pmf(n1, n2);
                        if (want == 0.0) {
                            ASSERT_EQ(got, 0.0) << n1 << "," << n2;
                        } else {
                            ASSERT_NEAR(got, want, 1e-10 * want)
                                << "alpha=" << alpha << " p=" << p1 << "," << p2 << " n=" << n1
                                << "," << n2;
                            ++checked;
                        }
                    }
                }
                EXPECT_GT(checked, 30u);
            }
        }
    }
}

TEST(JointPmf, WindowMassAtMostOne)
{
    ConsumptionPmf pmf(2, 1, 0.1, 0.3);
    double sum = 0.0;
    for (std::uint64_t n1 = 3; n1 <= 6; ++n1) {
        for (std::uint64_t n2 = 1; n2 <= 4; ++n2) {
            sum += pmf(n1, n2);
        }
    }
    EXPECT_GT(sum, 0.0);
    EXPECT_LE(sum, 1.0);
}

TEST(JointPmf, NormalizesAndReproducesMarginalMeans)
{
    const double p1 = 0.5;
    const double p2 = 0.4;
    for (int alpha : {0, 1}) {
        const std::uint64_t r = 3;
        ConsumptionPmf pmf(r, alpha, p1, p2);
        double mass = 0.0, m1 = 0.0, m2 = 0.0;
        for (std::uint64_t n1 = 0; n1 <= 120; ++n1) {
            for (std::uint64_t n2 = 0; n2 <= 120; ++n2) {
                const double p = pmf(n1, n2);
                mass += p;
                m1 += static_cast<double>(n1) * p;
                m2 += static_cast<double>(n2) * p;
            }
        }
        const double e1 = static_cast<double>(r + static_cast<std::uint64_t>(alpha)) / p1 +
                          static_cast<double>(r - static_cast<std::uint64_t>(alpha)) / p2;
        EXPECT_GE(mass, 1.0 - 1e-6);
        EXPECT_LE(mass, 1.0 + 1e-12);
        EXPECT_NEAR(m1, e1, 1e-6 * e1);
        EXPECT_NEAR(m2, e1, 1e-6 * e1);
    }
}

TEST(ExpectedPairs, BracketIsTightAndBelowClosedFormBound)
{
    for (int alpha : {0, 1}) {
        const PmfBracket b = expected_pairs_exact(3, alpha, 0.5, 0.4, 1e-8);
        EXPECT_LE(b.upper - b.lower, 1e-8);
        EXPECT_LE(b.lower, b.upper);
        EXPECT_LE(b.upper, pairs_upper_bound(3, alpha, 0.5, 0.4));
        // E[max] is at least the larger marginal mean
        const double e1 = (3.0 + alpha) / 0.5 + (3.0 - alpha) / 0.4;
        EXPECT_GE(b.upper, e1);
        EXPECT_LT(b.residual_mass, 1e-6);
    }
}

TEST(ExpectedPairs, ShellLimitRaisesNumericFailure)
{
    EXPECT_THROW(expected_pairs_exact(3, 1, 0.2, 0.3, 1e-6, 20), NumericFailure);
    EXPECT_THROW(expected_pairs_exact(3, 1, 0.2, 0.3, 0.0), InvalidConfig);
}

TEST(JointPmf, RejectsBadArguments)
{
    EXPECT_THROW(ConsumptionPmf(1, 1, 0.1, 0.2), InvalidConfig);
    EXPECT_THROW(ConsumptionPmf(3, 2, 0.1, 0.2), InvalidConfig);
    EXPECT_THROW(ConsumptionPmf(3, 1, 1.0, 0.2), InvalidConfig);
}
