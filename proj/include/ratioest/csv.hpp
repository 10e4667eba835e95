// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "ratioest/analysis.hpp"
#include "ratioest/estimator.hpp"
#include "ratioest/montecarlo.hpp"

namespace ratioest::csv {

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

/// Builds one CSV line. Text fields are quoted only when they need it.
class RowBuilder {
public:
    RowBuilder& add(double x);
    RowBuilder& add(std::uint64_t x);
    RowBuilder& add(std::string_view text);
    RowBuilder& add(const char* text) { return add(std::string_view(text)); }
    RowBuilder& add(const std::optional<double>& x);
    RowBuilder& empty();

    /// The line without a trailing newline.
    const std::string& str() const noexcept { return line_; }

private:
    void separate();

    std::string line_;
    bool first_ = true;
};

//---------------------------------------------------------------------------//
// Simulation results
//---------------------------------------------------------------------------//

std::string simulation_header(bool with_se = false);
std::string simulation_row(const montecarlo::GridRow& row, bool with_se = false);
void write_simulation(std::ostream& out, std::span<const montecarlo::GridRow> rows,
                      bool with_se = false);

std::string_view status_name(montecarlo::CellStatus status);

//---------------------------------------------------------------------------//
// Closed-form bounds
//---------------------------------------------------------------------------//

/// One line of a bounds table. Fields that do not apply are left empty: a
/// rho-only or p_max-only row has no p1/p2 and no R-dependent quantities.
struct BoundsRow {
    TargetParameter param{ParamKind::RR};
    double mu_bar = 0.0;
    std::uint64_t r = 0;
    std::optional<double> rho;
    std::optional<double> bigR;
    std::optional<double> p_max;
    std::optional<double> p1;
    std::optional<double> p2;
    std::optional<analysis::BoundsReport> report;
    std::optional<double> effic_bound_indep;
    analysis::AsymptoticBound asymptotic{};
    std::string status = "ok";
};

/// Full report at (p1, p2).
BoundsRow bounds_at_probabilities(TargetParameter param, double mu_bar, double p1, double p2);
/// Full report at (rho, R); infeasible points get status "infeasible".
BoundsRow bounds_at_rho_ratio(TargetParameter param, double mu_bar, double rho, double bigR);
/// R-independent bound from rho alone (RR/LRR).
BoundsRow bounds_at_rho(TargetParameter param, double mu_bar, double rho);
/// R-independent bound from p_max alone (OR/LOR).
BoundsRow bounds_at_pmax(TargetParameter param, double mu_bar, double p_max);
/// Only the asymptotic bounds.
BoundsRow bounds_asymptotic(TargetParameter param, double mu_bar);

std::string bounds_header();
std::string bounds_row(const BoundsRow& row);
void write_bounds(std::ostream& out, std::span<const BoundsRow> rows);

//---------------------------------------------------------------------------//
// Single estimations and pmf dumps
//---------------------------------------------------------------------------//

std::string estimate_header();
std::string estimate_row(TargetParameter param, const EstimationResult& result);

std::string pmf_header();
std::string bracket_header();
std::string bracket_row(TargetParameter param, std::uint64_t r, double p1, double p2,
                        double tail_tol, const analysis::PmfBracket& bracket);

}  // namespace ratioest::csv
