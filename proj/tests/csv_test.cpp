// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratioest/csv.hpp"

#include <charconv>
#include <sstream>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace ratioest;

namespace {

std::size_t count_fields(const std::string& line)
{
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

}  // namespace

TEST(FormatDouble, ShortestRoundTrip)
{
    EXPECT_EQ(csv::format_double(0.1), "0.1");
    EXPECT_EQ(csv::format_double(4.0), "4");
    EXPECT_EQ(csv::format_double(1e-300), "1e-300");
    EXPECT_EQ(csv::format_double(std::nan("")), "nan");
    ratioest::testing::CaseGen gen(1);
    for (int i = 0; i < 10000; ++i) {
        const double x = gen.log_uniform(1e-200, 1e200) * (gen.coin() ? 1 : -1);
        const std::string s = csv::format_double(x);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        ASSERT_EQ(back, x) << s;
    }
}

TEST(RowBuilder, QuotesOnlyWhenNeeded)
{
    csv::RowBuilder b;
    b.add("plain").add("a,b").add("say \"hi\"").empty().add(std::uint64_t{7}).add(std::optional<double>{});
    EXPECT_EQ(b.str(), "plain,\"a,b\",\"say \"\"hi\"\"\",,7,");
}

TEST(SimulationCsv, HeaderIsStable)
{
    EXPECT_EQ(csv::simulation_header(),
              "param,mu_bar,r,rho,R,p1,p2,reps,seed,mean_est,true_value,err_metric,err_bound,"
              "mean_m1,mean_m2,mean_pairs,sef,sef_bound,efficiency,effic_bound,status");
    EXPECT_EQ(csv::simulation_header(true),
              csv::simulation_header() + ",se_mean,se_err,se_m1,se_sef,se_effic");
}

TEST(SimulationCsv, RowsHaveHeaderWidth)
{
    montecarlo::SimulationPlan plan;
    plan.param = kLOR;
    plan.mu_bars = {0.3};
    plan.rhos = {0.1, 0.9};
    plan.bigRs = {4.0};
    plan.replications = 50;
    const auto rows = montecarlo::run_grid(plan);
    for (bool se : {false, true}) {
        std::ostringstream out;
        csv::write_simulation(out, rows, se);
        std::istringstream in(out.str());
        std::string line;
        std::getline(in, line);
        const std::size_t width = count_fields(line);
        EXPECT_EQ(width, se ? 26u : 21u);
        std::getline(in, line);
        EXPECT_EQ(count_fields(line), width);
        EXPECT_NE(line.find(",ok"), std::string::npos);
        EXPECT_EQ(line.rfind("lor,0.3,5,0.1,4,0.2,0.05,50,0,", 0), 0u) << line;
        std::getline(in, line);
        EXPECT_EQ(count_fields(line), width);
        EXPECT_NE(line.find(",infeasible"), std::string::npos);
    }
}

TEST(BoundsCsv, RowKinds)
{
    const std::size_t width = count_fields(csv::bounds_header());
    const csv::BoundsRow full = csv::bounds_at_rho_ratio(kRR, 0.04, 0.01, 1.0);
    const csv::BoundsRow rho = csv::bounds_at_rho(kLRR, 0.04, 0.01);
    const csv::BoundsRow pmax = csv::bounds_at_pmax(kLOR, 0.04, 0.01);
    const csv::BoundsRow bad = csv::bounds_at_rho_ratio(kRR, 0.04, 0.5, 16.0);
    for (const auto* row : {&full, &rho, &pmax, &bad}) {
        EXPECT_EQ(count_fields(csv::bounds_row(*row)), width);
    }
    EXPECT_TRUE(full.report.has_value());
    EXPECT_EQ(bad.status, "infeasible");
    EXPECT_NE(csv::bounds_row(rho).find("0.935168008311068"), std::string::npos);
    EXPECT_NE(csv::bounds_row(pmax).find("0.9441666666666667"), std::string::npos);
}
