// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

// Exact distribution of the per-population consumption (M1, M2) for the
// RR/LRR estimators, and the series for E[max(M1, M2)].

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "ratioest/analysis.hpp"
#include "ratioest/error.hpp"
#include "ratioest/numeric.hpp"

namespace ratioest::analysis {

namespace {

// Beyond this total count the log-factorial table and the O(n1 n2) double
// sum stop being meaningful.
constexpr std::uint64_t kMaxTotalCount = std::uint64_t{1} << 26;

/// Streaming log-sum-exp: rescales only when a new maximum appears.
class LogSumExp {
public:
    void add(double t) noexcept
    {
        if (t <= max_) {
            sum_ += std::exp(t - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - t) + 1.0;
            max_ = t;
        }
    }
    double log_value() const noexcept
    {
        return sum_ > 0.0 ? max_ + std::log(sum_) : -std::numeric_limits<double>::infinity();
    }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

}  // namespace

ConsumptionPmf::ConsumptionPmf(std::uint64_t r, int alpha, double p1, double p2)
    : r_(r), alpha_(static_cast<std::uint64_t>(alpha))
{
    if (r < 2) {
        throw InvalidConfig("success threshold r must be at least 2");
    }
    if (alpha != 0 && alpha != 1) {
        throw InvalidConfig("alpha must be 0 or 1");
    }
    if (!(p1 > 0.0 && p1 < 1.0 && p2 > 0.0 && p2 < 1.0)) {
        throw InvalidConfig("p1 and p2 must lie in (0,1)");
    }
    log_q1_ = std::log1p(-p1);
    log_q2_ = std::log1p(-p2);
    log_odds1_ = std::log(p1) - log_q1_;
    log_odds2_ = std::log(p2) - log_q2_;
}

void ConsumptionPmf::ensure(std::uint64_t n)
{
    if (n > kMaxTotalCount) {
        throw NumericFailure("consumption count " + std::to_string(n) +
                             " exceeds the pmf evaluation limit");
    }
    if (log_fact_.size() > n) {
        return;
    }
    const std::size_t old = log_fact_.size();
    log_fact_.resize(n + 1);
    for (std::size_t k = old; k <= n; ++k) {
        log_fact_[k] = boost::math::lgamma(static_cast<double>(k) + 1.0);
    }

    const auto log_choose = [this](std::uint64_t top, std::uint64_t bottom) {
        return log_fact_[top] - log_fact_[bottom] - log_fact_[top - bottom];
    };
    const std::uint64_t plus = r_ + alpha_;
    const std::uint64_t minus = r_ - alpha_;
    const std::size_t old1 = phase1_term_.size();
    const std::size_t old2 = phase2_term_.size();
    phase1_term_.resize(n + 1);
    phase2_term_.resize(n + 1);
    // N' successes-phase arrangements and the population-2 successes it implies.
    for (std::uint64_t k = std::max<std::uint64_t>(old1, plus); k <= n; ++k) {
        phase1_term_[k] = log_choose(k - 1, plus - 1) +
                          static_cast<double>(k - 2 * alpha_) * log_odds2_;
    }
    // N'' failures-phase arrangements and the population-1 successes it implies.
    for (std::uint64_t k = std::max<std::uint64_t>(old2, minus); k <= n; ++k) {
        phase2_term_[k] = log_choose(k - 1, minus - 1) +
                          static_cast<double>(k + 2 * alpha_) * log_odds1_;
    }
}

double ConsumptionPmf::operator()(std::uint64_t n1, std::uint64_t n2)
{
    if (n1 < r_ + alpha_ || n2 < r_ - alpha_) {
        return 0.0;
    }
    const std::uint64_t total = n1 + n2;
    ensure(total);

    // N'' runs over [r - alpha, n1 - 2 alpha], N' over [r + alpha, n2 + 2 alpha].
    const std::uint64_t dp_lo = r_ - alpha_;
    const std::uint64_t dp_hi = n1 - 2 * alpha_;
    const std::uint64_t p_lo = r_ + alpha_;
    const std::uint64_t p_hi = n2 + 2 * alpha_;

    if (scratch_.size() <= dp_hi) {
        scratch_.resize(dp_hi + 1);
    }
    for (std::uint64_t k = dp_lo; k <= dp_hi; ++k) {
        scratch_[k] = phase2_term_[k] - log_fact_[n1 - k - 2 * alpha_];
    }

    LogSumExp acc;
    for (std::uint64_t np = p_lo; np <= p_hi; ++np) {
        const double a = phase1_term_[np] - log_fact_[n2 + 2 * alpha_ - np];
        const double* lf = log_fact_.data() + (np - 1);
        for (std::uint64_t k = dp_lo; k <= dp_hi; ++k) {
            acc.add(a + scratch_[k] - lf[k]);
        }
    }

    const double prefix = static_cast<double>(n1) * log_q1_ + static_cast<double>(n2) * log_q2_ -
                          static_cast<double>(total) * std::numbers::ln2 +
                          log_fact_[total - 1];
    return std::exp(prefix + acc.log_value());
}

double joint_consumption_pmf(std::uint64_t r, int alpha, double p1, double p2,
                             std::uint64_t n1, std::uint64_t n2)
{
    ConsumptionPmf pmf(r, alpha, p1, p2);
    return pmf(n1, n2);
}

PmfBracket expected_pairs_exact(std::uint64_t r, int alpha, double p1, double p2,
                                double tail_tol, std::uint64_t max_shell)
{
    if (!(tail_tol > 0.0)) {
        throw InvalidConfig("tail tolerance must be positive");
    }
    ConsumptionPmf pmf(r, alpha, p1, p2);
    const auto a = static_cast<std::uint64_t>(alpha);
    const double mean_total =
        2.0 * (static_cast<double>(r + a) / p1 + static_cast<double>(r - a) / p2);

    CompensatedSum lower;
    CompensatedSum weighted;  // sum of (n1 + n2) * P over enumerated cells
    CompensatedSum mass;
    PmfBracket bracket;
    for (std::uint64_t m = r + a; m <= max_shell; ++m) {
        const auto md = static_cast<double>(m);
        CompensatedSum shell;
        for (std::uint64_t n1 = r + a; n1 <= m; ++n1) {
            const double prob = pmf(n1, m);
            shell += prob;
            weighted += static_cast<double>(n1 + m) * prob;
        }
        for (std::uint64_t n2 = r - a; n2 < m; ++n2) {
            const double prob = pmf(m, n2);
            shell += prob;
            weighted += static_cast<double>(m + n2) * prob;
        }
        lower += md * shell.value();
        mass += shell.value();

        const double tail = std::max(0.0, mean_total - weighted.value());
        bracket.lower = lower.value();
        bracket.upper = bracket.lower + tail;
        bracket.residual_mass = std::max(0.0, 1.0 - mass.value());
        bracket.last_shell = m;
        if (tail <= tail_tol) {
            return bracket;
        }
    }
    throw NumericFailure("E[M] series did not reach tolerance " + std::to_string(tail_tol) +
                         " within " + std::to_string(max_shell) + " shells (bracket width " +
                         std::to_string(bracket.upper - bracket.lower) + ")");
}

}  // namespace ratioest::analysis
