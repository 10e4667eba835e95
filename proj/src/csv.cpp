// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratioest/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

#include "ratioest/error.hpp"

namespace ratioest::csv {

std::string format_double(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    if (res.ec != std::errc{}) {
        throw NumericFailure("cannot format double");
    }
    return std::string(buf, res.ptr);
}

void RowBuilder::separate()
{
    if (!first_) {
        line_.push_back(',');
    }
    first_ = false;
}

RowBuilder& RowBuilder::add(double x)
{
    separate();
    line_ += format_double(x);
    return *this;
}

RowBuilder& RowBuilder::add(std::uint64_t x)
{
    separate();
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    line_.append(buf, res.ptr);
    return *this;
}

RowBuilder& RowBuilder::add(std::string_view text)
{
    separate();
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
        line_ += text;
        return *this;
    }
    line_.push_back('"');
    for (char c : text) {
        if (c == '"') {
            line_.push_back('"');
        }
        line_.push_back(c);
    }
    line_.push_back('"');
    return *this;
}

RowBuilder& RowBuilder::add(const std::optional<double>& x)
{
    return x ? add(*x) : empty();
}

RowBuilder& RowBuilder::empty()
{
    separate();
    return *this;
}

//---------------------------------------------------------------------------//

namespace {

constexpr std::string_view kSimulationColumns =
    "param,mu_bar,r,rho,R,p1,p2,reps,seed,mean_est,true_value,err_metric,err_bound,"
    "mean_m1,mean_m2,mean_pairs,sef,sef_bound,efficiency,effic_bound,status";
constexpr std::string_view kSimulationSeColumns = ",se_mean,se_err,se_m1,se_sef,se_effic";

}  // namespace

std::string_view status_name(montecarlo::CellStatus status)
{
    switch (status) {
    case montecarlo::CellStatus::Ok:
        return "ok";
    case montecarlo::CellStatus::Infeasible:
        return "infeasible";
    case montecarlo::CellStatus::NumericFailure:
        return "numeric_failure";
    }
    return "unknown";
}

std::string simulation_header(bool with_se)
{
    std::string h(kSimulationColumns);
    if (with_se) {
        h += kSimulationSeColumns;
    }
    return h;
}

std::string simulation_row(const montecarlo::GridRow& row, bool with_se)
{
    const montecarlo::CellSpec& spec = row.spec;
    RowBuilder b;
    b.add(to_string(spec.param.kind()))
        .add(spec.mu_bar)
        .add(row.r)
        .add(spec.rho)
        .add(spec.bigR)
        .add(spec.p1)
        .add(spec.p2)
        .add(row.replications)
        .add(row.master_seed);

    const montecarlo::CellStatistics* st = row.stats ? &*row.stats : nullptr;
    if (st != nullptr) {
        const double p = analysis::transformed_success_probability(spec.param, spec.p1, spec.p2);
        const double sef_bound = analysis::sef_lower_bound(spec.param, row.r, spec.p1, spec.p2);
        b.add(st->mean_estimate)
            .add(st->true_value)
            .add(st->mse_or_relmse)
            .add(analysis::mse_upper_bound(spec.param, row.r, p).p_dependent)
            .add(st->mean_consumed1)
            .add(st->mean_consumed2)
            .add(st->mean_pairs)
            .add(st->sef)
            .add(sef_bound)
            .add(st->efficiency)
            .add(analysis::efficiency_lower_bound_R_dependent(spec.param, row.r, spec.p1,
                                                              spec.p2, sef_bound));
    } else {
        for (int i = 0; i < 11; ++i) {
            b.empty();
        }
    }
    b.add(status_name(row.status));
    if (with_se) {
        if (st != nullptr) {
            b.add(st->se_mean).add(st->se_mse).add(st->se_consumed1).add(st->se_sef).add(
                st->se_efficiency);
        } else {
            for (int i = 0; i < 5; ++i) {
                b.empty();
            }
        }
    }
    return b.str();
}

void write_simulation(std::ostream& out, std::span<const montecarlo::GridRow> rows,
                      bool with_se)
{
    out << simulation_header(with_se) << '\n';
    for (const montecarlo::GridRow& row : rows) {
        out << simulation_row(row, with_se) << '\n';
    }
}

//---------------------------------------------------------------------------//

namespace {

BoundsRow base_row(TargetParameter param, double mu_bar)
{
    BoundsRow row;
    row.param = param;
    row.mu_bar = mu_bar;
    row.r = required_successes(mu_bar, param);
    row.asymptotic = analysis::asymptotic_efficiency_bound(param, mu_bar);
    return row;
}

}  // namespace

BoundsRow bounds_at_probabilities(TargetParameter param, double mu_bar, double p1, double p2)
{
    BoundsRow row = base_row(param, mu_bar);
    row.p1 = p1;
    row.p2 = p2;
    row.rho = std::sqrt(p1 * p2);
    row.bigR = p1 / p2;
    row.p_max = std::max(p1, p2);
    row.report = analysis::bounds_report(param, mu_bar, p1, p2);
    row.effic_bound_indep = row.report->effic_lower_bound_R_independent;
    return row;
}

BoundsRow bounds_at_rho_ratio(TargetParameter param, double mu_bar, double rho, double bigR)
{
    try {
        const montecarlo::CellProbabilities probs = montecarlo::resolve_cell(rho, bigR);
        BoundsRow row = bounds_at_probabilities(param, mu_bar, probs.p1, probs.p2);
        row.rho = rho;
        row.bigR = bigR;
        return row;
    } catch (const InfeasibleCell&) {
        BoundsRow row = base_row(param, mu_bar);
        row.rho = rho;
        row.bigR = bigR;
        row.p_max = rho * std::max(std::sqrt(bigR), 1.0 / std::sqrt(bigR));
        row.status = "infeasible";
        return row;
    }
}

BoundsRow bounds_at_rho(TargetParameter param, double mu_bar, double rho)
{
    BoundsRow row = base_row(param, mu_bar);
    row.rho = rho;
    row.effic_bound_indep = analysis::efficiency_bound_rho(param, row.r, rho);
    return row;
}

BoundsRow bounds_at_pmax(TargetParameter param, double mu_bar, double p_max)
{
    BoundsRow row = base_row(param, mu_bar);
    row.p_max = p_max;
    row.effic_bound_indep = analysis::efficiency_bound_pmax(param, row.r, p_max);
    return row;
}

BoundsRow bounds_asymptotic(TargetParameter param, double mu_bar)
{
    return base_row(param, mu_bar);
}

std::string bounds_header()
{
    return "param,mu_bar,r,rho,R,p_max,p1,p2,p_transformed,theta,mse_bound,mse_bound_const,"
           "vef,expected_m1,expected_m2,pairs_upper_bound,sef_bound,effic_bound_R,"
           "effic_bound_indep,asymptotic_exact,asymptotic_loose,status";
}

std::string bounds_row(const BoundsRow& row)
{
    RowBuilder b;
    b.add(to_string(row.param.kind()))
        .add(row.mu_bar)
        .add(row.r)
        .add(row.rho)
        .add(row.bigR)
        .add(row.p_max)
        .add(row.p1)
        .add(row.p2);
    if (row.report) {
        const analysis::BoundsReport& rep = *row.report;
        b.add(rep.p_transformed)
            .add(rep.theta_true)
            .add(rep.mse_bound_p_dependent)
            .add(rep.mse_bound_constant)
            .add(rep.vef)
            .add(rep.expected_consumed1)
            .add(rep.expected_consumed2)
            .add(rep.pairs_upper_bound)
            .add(rep.sef_lower_bound)
            .add(rep.effic_lower_bound_R_dependent);
    } else {
        for (int i = 0; i < 10; ++i) {
            b.empty();
        }
    }
    b.add(row.effic_bound_indep)
        .add(row.asymptotic.exact)
        .add(row.asymptotic.loose)
        .add(std::string_view(row.status));
    return b.str();
}

void write_bounds(std::ostream& out, std::span<const BoundsRow> rows)
{
    out << bounds_header() << '\n';
    for (const BoundsRow& row : rows) {
        out << bounds_row(row) << '\n';
    }
}

//---------------------------------------------------------------------------//

std::string estimate_header()
{
    return "param,r,n_prime,n_dprime,estimate,consumed1,consumed2,pairs,surplus1,surplus2";
}

std::string estimate_row(TargetParameter param, const EstimationResult& res)
{
    RowBuilder b;
    b.add(to_string(param.kind()))
        .add(res.r)
        .add(res.n_prime)
        .add(res.n_dprime)
        .add(res.estimate)
        .add(res.consumed1)
        .add(res.consumed2)
        .add(res.pairs)
        .add(res.surplus1)
        .add(res.surplus2);
    return b.str();
}

std::string pmf_header() { return "n1,n2,pmf"; }

std::string bracket_header()
{
    return "param,r,alpha,p1,p2,tail_tol,lower,upper,residual_mass,last_shell";
}

std::string bracket_row(TargetParameter param, std::uint64_t r, double p1, double p2,
                        double tail_tol, const analysis::PmfBracket& bracket)
{
    RowBuilder b;
    b.add(to_string(param.kind()))
        .add(r)
        .add(static_cast<std::uint64_t>(param.alpha()))
        .add(p1)
        .add(p2)
        .add(tail_tol)
        .add(bracket.lower)
        .add(bracket.upper)
        .add(bracket.residual_mass)
        .add(bracket.last_shell);
    return b.str();
}

}  // namespace ratioest::csv
