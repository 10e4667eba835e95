// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "ratioest/target.hpp"

/// Closed-form layer: transformed probabilities, true parameter values,
/// moments of the inner transforms, exact consumption distribution, and the
/// accuracy/efficiency bounds. Every function here is pure.
namespace ratioest::analysis {

/// Success probability of the transformed stream: p1/(p1+p2) for RR/LRR,
/// p1(1-p2)/(p1(1-p2)+p2(1-p1)) for OR/LOR.
double transformed_success_probability(TargetParameter param, double p1, double p2);

/// p1/p2, the odds ratio, or their natural logarithms.
double true_parameter(TargetParameter param, double p1, double p2);

/// Per-execution consumption moments of the inner transform.
/// For OR/LOR the conditional means coincide with the unconditional one and
/// var_diff is 0 because both populations are used equally.
struct InnerLoopMoments {
    double mean_used1_given_y1;
    double mean_used1_given_y0;
    double mean_used2_given_y1;
    double mean_used2_given_y0;
    double mean_used;  // E[n1] = E[n2]
    double var_diff;   // Var[n1 - n2 | Y], same for both values of Y
};
InnerLoopMoments inner_loop_moments(TargetParameter param, double p1, double p2);

struct MseBounds {
    double p_dependent;
    double constant;
};
/// Guaranteed (relative) MSE for success threshold r at transformed
/// probability p. p_dependent < constant always.
MseBounds mse_upper_bound(TargetParameter param, std::uint64_t r, double p);

/// p-dependent bound divided by the constant bound; lies in (0,1).
double variance_efficiency_factor(TargetParameter param, std::uint64_t r, double p);

struct ConsumptionMeans {
    double consumed1;
    double consumed2;
};
/// E[M1] and E[M2] (equal for all four parameters).
ConsumptionMeans expected_consumption(TargetParameter param, std::uint64_t r, double p1,
                                      double p2);

/// Upper bound on the mean number of pairs for the RR/LRR family.
double pairs_upper_bound(std::uint64_t r, int alpha, double p1, double p2);

/// Lower bound on the sampling efficiency factor for the RR/LRR family.
double sef_lower_bound(std::uint64_t r, int alpha, double p1, double p2);
/// As above; exactly 1 for OR/LOR, which never waste observations.
double sef_lower_bound(TargetParameter param, std::uint64_t r, double p1, double p2);

/// P[M1 = n1, M2 = n2] for the RR/LRR family, evaluated in log space.
/// Zero outside the support n1 >= r + alpha, n2 >= r - alpha.
double joint_consumption_pmf(std::uint64_t r, int alpha, double p1, double p2,
                             std::uint64_t n1, std::uint64_t n2);

/// Reusable evaluator of the joint consumption pmf. Caches log-factorials
/// and the per-index binomial terms, so repeated calls over a window or a
/// series are much cheaper than independent joint_consumption_pmf calls.
class ConsumptionPmf {
public:
    ConsumptionPmf(std::uint64_t r, int alpha, double p1, double p2);

    double operator()(std::uint64_t n1, std::uint64_t n2);

    std::uint64_t min_n1() const noexcept { return r_ + alpha_; }
    std::uint64_t min_n2() const noexcept { return r_ - alpha_; }

private:
    void ensure(std::uint64_t n);
    double log_factorial(std::uint64_t k) const { return log_fact_[k]; }

    std::uint64_t r_;
    std::uint64_t alpha_;
    double log_odds1_;
    double log_odds2_;
    double log_q1_;
    double log_q2_;
    std::vector<double> log_fact_;
    std::vector<double> phase1_term_;  // indexed by N'
    std::vector<double> phase2_term_;  // indexed by N''
    std::vector<double> scratch_;
};

/// Truncated-series value with a rigorous two-sided bracket.
struct PmfBracket {
    double lower = 0.0;
    double upper = 0.0;
    double residual_mass = 1.0;  // probability not yet enumerated
    std::uint64_t last_shell = 0;
};

inline constexpr double kDefaultTailTolerance = 1e-6;
inline constexpr std::uint64_t kDefaultMaxShell = 4000;

/// E[max(M1, M2)] for the RR/LRR family by summing shells m = max(n1, n2) in
/// increasing order. lower is the partial sum; upper adds the un-enumerated
/// part of E[M1] + E[M2], which dominates the tail of E[max]. Stops once
/// upper - lower <= tail_tol; throws NumericFailure past max_shell.
PmfBracket expected_pairs_exact(std::uint64_t r, int alpha, double p1, double p2,
                                double tail_tol = kDefaultTailTolerance,
                                std::uint64_t max_shell = kDefaultMaxShell);

/// (dθ/dp1)^2 p1(1-p1) + (dθ/dp2)^2 p2(1-p2).
double cramer_rao_numerator(TargetParameter param, double p1, double p2);

/// Cramér–Rao numerator over (mean pairs × MSE). `mse` is the plain
/// (not relative) mean-square error.
double observed_efficiency(TargetParameter param, double p1, double p2, double mean_pairs,
                           double mse);

/// Efficiency lower bound at known (p1, p2). For RR/LRR pass the sampling
/// efficiency factor (or its lower bound); for OR/LOR sef_value must be 1.
double efficiency_lower_bound_R_dependent(TargetParameter param, std::uint64_t r, double p1,
                                          double p2, double sef_value);

/// Efficiency lower bound for RR/LRR that depends only on rho = sqrt(p1 p2).
double efficiency_bound_rho(TargetParameter param, std::uint64_t r, double rho);

/// Efficiency lower bound for OR/LOR that depends only on p_max.
double efficiency_bound_pmax(TargetParameter param, std::uint64_t r, double p_max);

struct AsymptoticBound {
    double exact;  // (r - c) / (r + alpha)
    double loose;  // 1 / (1 + mu_bar (c + alpha))
};
AsymptoticBound asymptotic_efficiency_bound(TargetParameter param, double mu_bar);

struct Interval {
    double low;
    double high;
};
/// Range of R compatible with rho when max(p1, p2) < p_sup.
Interval rr_feasible_interval(double rho, double p_sup);

/// Every closed-form quantity for one (param, mu_bar, p1, p2).
struct BoundsReport {
    std::uint64_t r;
    double p_transformed;
    double theta_true;
    double mse_bound_p_dependent;
    double mse_bound_constant;
    double vef;
    double expected_consumed1;
    double expected_consumed2;
    double pairs_upper_bound;  // RR/LRR; for OR/LOR the exact mean pairs
    double sef_lower_bound;    // 1 for OR/LOR
    double effic_lower_bound_R_dependent;
    double effic_lower_bound_R_independent;
    double asymptotic_bound;
};
BoundsReport bounds_report(TargetParameter param, double mu_bar, double p1, double p2);

}  // namespace ratioest::analysis
