// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratioest/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ratioest/error.hpp"
#include "ratioest/estimator.hpp"

namespace ratioest::analysis {

namespace {

void require_probability(double p, const char* name)
{
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidConfig(std::string(name) + " must lie in (0,1)");
    }
}

void require_probabilities(double p1, double p2)
{
    require_probability(p1, "p1");
    require_probability(p2, "p2");
}

void require_threshold(std::uint64_t r)
{
    if (r < 2) {
        throw InvalidConfig("success threshold r must be at least 2");
    }
}

void require_alpha(int alpha)
{
    if (alpha != 0 && alpha != 1) {
        throw InvalidConfig("alpha must be 0 or 1");
    }
}

void require_family(TargetParameter param, bool risk_family, const char* what)
{
    if (param.uses_risk_transform() != risk_family) {
        throw InvalidConfig(std::string(what) + (risk_family ? " applies to RR/LRR only"
                                                             : " applies to OR/LOR only"));
    }
}

}  // namespace

double transformed_success_probability(TargetParameter param, double p1, double p2)
{
    require_probabilities(p1, p2);
    if (param.uses_risk_transform()) {
        return p1 / (p1 + p2);
    }
    const double a = p1 * (1.0 - p2);
    const double b = p2 * (1.0 - p1);
    return a / (a + b);
}

double true_parameter(TargetParameter param, double p1, double p2)
{
    require_probabilities(p1, p2);
    switch (param.kind()) {
    case ParamKind::RR:
        return p1 / p2;
    case ParamKind::LRR:
        return std::log(p1 / p2);
    case ParamKind::OR:
        return p1 * (1.0 - p2) / (p2 * (1.0 - p1));
    case ParamKind::LOR:
        return std::log(p1 * (1.0 - p2) / (p2 * (1.0 - p1)));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

InnerLoopMoments inner_loop_moments(TargetParameter param, double p1, double p2)
{
    require_probabilities(p1, p2);
    if (param.uses_risk_transform()) {
        const double s = p1 + p2;
        return {
            (1.0 + p2) / s,
            (1.0 - p1) / s,
            (1.0 - p2) / s,
            (1.0 + p1) / s,
            1.0 / s,
            2.0 * (p1 * (1.0 - p2) + p2 * (1.0 - p1)) / (s * s),
        };
    }
    const double mean = 1.0 / (p1 * (1.0 - p2) + p2 * (1.0 - p1));
    return {mean, mean, mean, mean, mean, 0.0};
}

MseBounds mse_upper_bound(TargetParameter param, std::uint64_t r, double p)
{
    require_threshold(r);
    require_probability(p, "p");
    const auto rd = static_cast<double>(r);
    if (!param.is_logarithmic()) {
        const double constant = 1.0 / (rd - 1.0);
        return {constant * (1.0 - p * (1.0 - p) / (rd - 1.0 + 2.0 * p)), constant};
    }
    const double lead =
        (rd * rd - rd / 4.0 - 0.25) / ((rd - 1.0 + p) * (rd - p) * (rd - 0.5));
    const double correction =
        p * (1.0 - p) / ((rd - 0.5) * (rd - 0.5)) * (1.0 - 1.0 / (2.0 * rd - 3.0));
    return {lead - correction, 1.0 / (rd - 1.25)};
}

double variance_efficiency_factor(TargetParameter param, std::uint64_t r, double p)
{
    require_threshold(r);
    require_probability(p, "p");
    const auto rd = static_cast<double>(r);
    if (!param.is_logarithmic()) {
        return 1.0 - p * (1.0 - p) / (rd - 1.0 + 2.0 * p);
    }
    const double lead = (rd * rd - rd / 4.0 - 0.25) * (rd - 1.25) /
                        ((rd - 1.0 + p) * (rd - p) * (rd - 0.5));
    const double correction = p * (1.0 - p) * (rd - 2.0) * (rd - 1.25) /
                              ((rd - 0.5) * (rd - 0.5) * (rd - 1.5));
    return lead - correction;
}

ConsumptionMeans expected_consumption(TargetParameter param, std::uint64_t r, double p1,
                                      double p2)
{
    require_threshold(r);
    require_probabilities(p1, p2);
    const auto plus = static_cast<double>(r + param.alpha());
    const auto minus = static_cast<double>(r - param.alpha());
    const double mean = param.uses_risk_transform()
                            ? plus / p1 + minus / p2
                            : plus / (p1 * (1.0 - p2)) + minus / (p2 * (1.0 - p1));
    return {mean, mean};
}

double pairs_upper_bound(std::uint64_t r, int alpha, double p1, double p2)
{
    require_threshold(r);
    require_alpha(alpha);
    require_probabilities(p1, p2);
    const auto plus = static_cast<double>(r + alpha);
    const auto minus = static_cast<double>(r - alpha);
    return plus / p1 + minus / p2 + std::sqrt(plus / (2.0 * p1) + minus / (2.0 * p2));
}

double sef_lower_bound(std::uint64_t r, int alpha, double p1, double p2)
{
    require_threshold(r);
    require_alpha(alpha);
    require_probabilities(p1, p2);
    const auto plus = static_cast<double>(r + alpha);
    const auto minus = static_cast<double>(r - alpha);
    return 1.0 / (1.0 + std::sqrt(p1 * p2 / (2.0 * (plus * p2 + minus * p1))));
}

double sef_lower_bound(TargetParameter param, std::uint64_t r, double p1, double p2)
{
    if (!param.uses_risk_transform()) {
        require_threshold(r);
        require_probabilities(p1, p2);
        return 1.0;
    }
    return sef_lower_bound(r, param.alpha(), p1, p2);
}

double cramer_rao_numerator(TargetParameter param, double p1, double p2)
{
    require_probabilities(p1, p2);
    switch (param.kind()) {
    case ParamKind::RR: {
        const double theta = p1 / p2;
        return theta * theta * (1.0 / p1 + 1.0 / p2 - 2.0);
    }
    case ParamKind::LRR:
        return 1.0 / p1 + 1.0 / p2 - 2.0;
    case ParamKind::OR: {
        const double theta = p1 * (1.0 - p2) / (p2 * (1.0 - p1));
        return theta * theta * (1.0 / (p1 * (1.0 - p1)) + 1.0 / (p2 * (1.0 - p2)));
    }
    case ParamKind::LOR:
        return 1.0 / (p1 * (1.0 - p1)) + 1.0 / (p2 * (1.0 - p2));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double observed_efficiency(TargetParameter param, double p1, double p2, double mean_pairs,
                           double mse)
{
    if (!(mean_pairs > 0.0) || !(mse > 0.0)) {
        throw InvalidConfig("observed efficiency needs positive mean pairs and MSE");
    }
    return cramer_rao_numerator(param, p1, p2) / (mean_pairs * mse);
}

double efficiency_lower_bound_R_dependent(TargetParameter param, std::uint64_t r, double p1,
                                          double p2, double sef_value)
{
    require_threshold(r);
    require_probabilities(p1, p2);
    if (!(sef_value > 0.0 && sef_value <= 1.0)) {
        throw InvalidConfig("sampling efficiency factor must lie in (0,1]");
    }
    const auto rd = static_cast<double>(r);
    const auto plus = static_cast<double>(r + param.alpha());
    const auto minus = static_cast<double>(r - param.alpha());
    const double p = transformed_success_probability(param, p1, p2);
    const double vef = variance_efficiency_factor(param, r, p);
    if (param.uses_risk_transform()) {
        const double num = (p2 * (1.0 - p1) + p1 * (1.0 - p2)) * (rd - param.c());
        return num / (plus * p2 + minus * p1) * sef_value / vef;
    }
    if (sef_value != 1.0) {
        throw InvalidConfig("OR/LOR efficiency bound takes sef = 1");
    }
    const double num = (p1 * (1.0 - p1) + p2 * (1.0 - p2)) * (rd - param.c());
    return num / (plus * p2 * (1.0 - p1) + minus * p1 * (1.0 - p2)) / vef;
}

double efficiency_bound_rho(TargetParameter param, std::uint64_t r, double rho)
{
    require_family(param, true, "rho-only efficiency bound");
    require_threshold(r);
    require_probability(rho, "rho");
    const auto rd = static_cast<double>(r);
    const auto a = static_cast<double>(param.alpha());
    const double plus = rd + a;
    const double minus = rd - a;
    const double quart = std::sqrt(std::sqrt(rd * rd - a * a));
    return (rd - param.c()) / plus *
           (rd - std::sqrt(a * a + rho * rho * (rd * rd - a * a))) / minus *
           (2.0 * quart / (2.0 * quart + std::sqrt(rho)));
}

double efficiency_bound_pmax(TargetParameter param, std::uint64_t r, double p_max)
{
    require_family(param, false, "p_max-only efficiency bound");
    require_threshold(r);
    if (!(p_max >= 0.0 && p_max < 1.0)) {
        throw InvalidConfig("p_max must lie in [0,1)");
    }
    const auto rd = static_cast<double>(r);
    return (rd - param.c()) / (rd + param.alpha()) * (1.0 - p_max);
}

AsymptoticBound asymptotic_efficiency_bound(TargetParameter param, double mu_bar)
{
    const auto rd = static_cast<double>(required_successes(mu_bar, param));
    return {(rd - param.c()) / (rd + param.alpha()),
            1.0 / (1.0 + mu_bar * (param.c() + param.alpha()))};
}

Interval rr_feasible_interval(double rho, double p_sup)
{
    if (!(rho > 0.0 && rho < p_sup && p_sup <= 1.0)) {
        throw InvalidConfig("feasible interval needs 0 < rho < p_sup <= 1");
    }
    const double ratio = (rho * rho) / (p_sup * p_sup);
    return {ratio, 1.0 / ratio};
}

BoundsReport bounds_report(TargetParameter param, double mu_bar, double p1, double p2)
{
    require_probabilities(p1, p2);
    BoundsReport rep{};
    rep.r = required_successes(mu_bar, param);
    rep.p_transformed = transformed_success_probability(param, p1, p2);
    rep.theta_true = true_parameter(param, p1, p2);
    const MseBounds mse = mse_upper_bound(param, rep.r, rep.p_transformed);
    rep.mse_bound_p_dependent = mse.p_dependent;
    rep.mse_bound_constant = mse.constant;
    rep.vef = variance_efficiency_factor(param, rep.r, rep.p_transformed);
    const ConsumptionMeans means = expected_consumption(param, rep.r, p1, p2);
    rep.expected_consumed1 = means.consumed1;
    rep.expected_consumed2 = means.consumed2;
    rep.sef_lower_bound = sef_lower_bound(param, rep.r, p1, p2);
    if (param.uses_risk_transform()) {
        rep.pairs_upper_bound = pairs_upper_bound(rep.r, param.alpha(), p1, p2);
        rep.effic_lower_bound_R_independent =
            efficiency_bound_rho(param, rep.r, std::sqrt(p1 * p2));
    } else {
        rep.pairs_upper_bound = means.consumed1;
        rep.effic_lower_bound_R_independent =
            efficiency_bound_pmax(param, rep.r, std::max(p1, p2));
    }
    rep.effic_lower_bound_R_dependent =
        efficiency_lower_bound_R_dependent(param, rep.r, p1, p2, rep.sef_lower_bound);
    rep.asymptotic_bound = asymptotic_efficiency_bound(param, mu_bar).exact;
    return rep;
}

}  // namespace ratioest::analysis
