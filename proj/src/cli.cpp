// Copyright 2026 The ratioest Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratioest/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ratioest/analysis.hpp"
#include "ratioest/csv.hpp"
#include "ratioest/error.hpp"
#include "ratioest/estimator.hpp"
#include "ratioest/montecarlo.hpp"
#include "ratioest/replay_file.hpp"
#include "ratioest/rng.hpp"

namespace ratioest::cli {

namespace {

namespace fs = std::filesystem;
namespace mc = montecarlo;

struct IndexRange {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
};

IndexRange parse_range(const std::string& text)
{
    const auto colon = text.find(':');
    try {
        std::size_t used = 0;
        if (colon == std::string::npos) {
            const auto v = std::stoull(text, &used);
            if (used != text.size()) {
                throw std::invalid_argument(text);
            }
            return {v, v};
        }
        const std::string a = text.substr(0, colon);
        const std::string b = text.substr(colon + 1);
        IndexRange range{std::stoull(a, &used), 0};
        if (used != a.size()) {
            throw std::invalid_argument(text);
        }
        range.hi = std::stoull(b, &used);
        if (used != b.size() || range.hi < range.lo) {
            throw std::invalid_argument(text);
        }
        return range;
    } catch (const std::logic_error&) {
        throw InvalidConfig("bad index range \"" + text + "\" (expected a:b with a <= b)");
    }
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n)
{
    if (n == 1) {
        return {lo};
    }
    std::vector<double> out(n);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

TargetParameter to_param(const std::string& text)
{
    const auto param = parse_target(text);
    if (!param) {
        throw InvalidConfig("unknown parameter \"" + text + "\" (use rr, lrr, or, lor)");
    }
    return *param;
}

/// Writes to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& body)
{
    if (path.empty()) {
        body(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw InvalidConfig("cannot open output file " + path);
    }
    body(file);
    if (!file) {
        throw InvalidConfig("write failed for " + path);
    }
}

mc::RunOptions run_options(int workers, const std::string& kernel)
{
    mc::RunOptions opts;
    opts.workers = workers;
    opts.kernel = kernel == "serial" ? mc::Kernel::Serial : mc::Kernel::Parallel;
    return opts;
}

//---------------------------------------------------------------------------//
// estimate
//---------------------------------------------------------------------------//

struct EstimateArgs {
    std::string param;
    double mu = 0.0;
    std::optional<double> p1;
    std::optional<double> p2;
    std::uint64_t seed = 0;
    std::string replay;
    std::string record;
    std::uint64_t cap = kDefaultIterationCap;
    bool csv = false;
};

void print_partial(std::ostream& err, const ReplayExhausted& ex)
{
    const LedgerCounts& c = ex.ledger();
    err << "error: " << ex.what() << "\n"
        << "partial state: consumed1=" << c.consumed1 << " consumed2=" << c.consumed2
        << " pairs=" << c.pairs_drawn << " surplus1=" << c.surplus1
        << " surplus2=" << c.surplus2;
    if (const auto& p = ex.progress()) {
        err << " phase=" << p->phase << " samples_phase1=" << p->samples_phase1
            << " samples_phase2=" << p->samples_phase2 << " successes=" << p->successes
            << " failures=" << p->failures;
    }
    err << "\n";
}

int cmd_estimate(const EstimateArgs& a, std::ostream& out)
{
    const TargetParameter param = to_param(a.param);
    const EstimatorConfig config = EstimatorConfig::from_accuracy(a.mu, param);
    const std::uint64_t key = derive_key(a.seed, 0, 0);
    FairCoin coin(CounterStream(key, Substream::Coin));

    EstimationResult result;
    if (!a.replay.empty()) {
        const std::vector<ObservationPair> pairs = read_replay_file(a.replay);
        PairedSampleLedger ledger = make_replay_ledger(pairs);
        result = run_estimation(param, config, ledger, coin, a.cap);
    } else {
        PairedSampleLedger ledger = make_simulated_ledger(PopulationModel(*a.p1, *a.p2), key);
        std::vector<ObservationPair> recorded;
        if (!a.record.empty()) {
            ledger.record_to(&recorded);
        }
        result = run_estimation(param, config, ledger, coin, a.cap);
        if (!a.record.empty()) {
            write_replay_file(a.record, recorded);
        }
    }

    if (a.csv) {
        out << csv::estimate_header() << '\n' << csv::estimate_row(param, result) << '\n';
    } else {
        out << "param=" << to_string(param) << " estimate=" << csv::format_double(result.estimate)
            << " r=" << result.r << " n_prime=" << result.n_prime
            << " n_dprime=" << result.n_dprime << " consumed1=" << result.consumed1
            << " consumed2=" << result.consumed2 << " pairs=" << result.pairs
            << " surplus1=" << result.surplus1 << " surplus2=" << result.surplus2 << '\n';
    }
    return kExitOk;
}

//---------------------------------------------------------------------------//
// simulate
//---------------------------------------------------------------------------//

struct GridArgs {
    std::string param;
    std::vector<double> mu;
    std::vector<double> rho;
    std::vector<double> bigR;
    std::vector<double> p1;
    std::vector<double> p2;
    std::vector<double> pmax;
    std::string out;
};

struct SimulateArgs {
    GridArgs grid;
    std::uint64_t reps = 100000;
    std::uint64_t seed = 0;
    int workers = 0;
    std::string kernel = "parallel";
    bool with_se = false;
};

void check_probability_lists(const GridArgs& g)
{
    if (g.p1.size() != g.p2.size()) {
        throw InvalidConfig("--p1 and --p2 need the same number of values");
    }
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out)
{
    mc::SimulationPlan plan;
    plan.param = to_param(a.grid.param);
    plan.mu_bars = a.grid.mu;
    plan.replications = a.reps;
    plan.master_seed = a.seed;
    check_probability_lists(a.grid);
    if (!a.grid.p1.empty()) {
        for (std::size_t i = 0; i < a.grid.p1.size(); ++i) {
            plan.probability_pairs.push_back({a.grid.p1[i], a.grid.p2[i]});
        }
    } else {
        if (a.grid.rho.empty()) {
            throw InvalidConfig("simulate needs --rho (with optional --R) or --p1/--p2");
        }
        plan.rhos = a.grid.rho;
        plan.bigRs = a.grid.bigR.empty() ? std::vector<double>{1.0} : a.grid.bigR;
    }
    for (double mu : plan.mu_bars) {
        (void)required_successes(mu, plan.param);
    }
    const auto rows = mc::run_grid(plan, run_options(a.workers, a.kernel));
    emit(a.grid.out, out, [&](std::ostream& os) { csv::write_simulation(os, rows, a.with_se); });
    return kExitOk;
}

//---------------------------------------------------------------------------//
// bounds
//---------------------------------------------------------------------------//

int cmd_bounds(const GridArgs& g, std::ostream& out)
{
    const TargetParameter param = to_param(g.param);
    check_probability_lists(g);
    if (!g.pmax.empty() && param.uses_risk_transform()) {
        throw InvalidConfig("--pmax bounds apply to or/lor; use --rho for rr/lrr");
    }
    if (!g.rho.empty() && g.bigR.empty() && !param.uses_risk_transform()) {
        throw InvalidConfig("or/lor have no rho-only bound; give --R as well, or use --pmax");
    }
    std::vector<csv::BoundsRow> rows;
    for (double mu : g.mu) {
        if (!g.p1.empty()) {
            for (std::size_t i = 0; i < g.p1.size(); ++i) {
                rows.push_back(csv::bounds_at_probabilities(param, mu, g.p1[i], g.p2[i]));
            }
        } else if (!g.rho.empty() && !g.bigR.empty()) {
            for (double bigR : g.bigR) {
                for (double rho : g.rho) {
                    rows.push_back(csv::bounds_at_rho_ratio(param, mu, rho, bigR));
                }
            }
        } else if (!g.rho.empty()) {
            for (double rho : g.rho) {
                rows.push_back(csv::bounds_at_rho(param, mu, rho));
            }
        } else if (!g.pmax.empty()) {
            for (double pm : g.pmax) {
                rows.push_back(csv::bounds_at_pmax(param, mu, pm));
            }
        } else {
            rows.push_back(csv::bounds_asymptotic(param, mu));
        }
    }
    emit(g.out, out, [&](std::ostream& os) { csv::write_bounds(os, rows); });
    return kExitOk;
}

//---------------------------------------------------------------------------//
// pmf
//---------------------------------------------------------------------------//

struct PmfArgs {
    std::string param;
    std::optional<std::uint64_t> r;
    std::optional<double> mu;
    double p1 = 0.0;
    double p2 = 0.0;
    std::string n1;
    std::string n2;
    bool expected_pairs = false;
    double tail_tol = analysis::kDefaultTailTolerance;
    std::uint64_t max_shell = analysis::kDefaultMaxShell;
    std::string out;
};

int cmd_pmf(const PmfArgs& a, std::ostream& out, std::ostream& err)
{
    const TargetParameter param = to_param(a.param);
    if (!param.uses_risk_transform()) {
        err << "error: the pmf subcommand covers rr/lrr only. For or/lor both populations "
               "consume the same count, M1 = M2, which is a sum of two negative binomial "
               "variables with success probabilities p1(1-p2) and p2(1-p1).\n";
        return kExitUsage;
    }
    if (a.r.has_value() == a.mu.has_value()) {
        throw InvalidConfig("pmf needs exactly one of --r or --mu");
    }
    const std::uint64_t r = a.r ? *a.r : required_successes(*a.mu, param);
    if (a.expected_pairs) {
        const analysis::PmfBracket bracket =
            analysis::expected_pairs_exact(r, param.alpha(), a.p1, a.p2, a.tail_tol, a.max_shell);
        emit(a.out, out, [&](std::ostream& os) {
            os << csv::bracket_header() << '\n'
               << csv::bracket_row(param, r, a.p1, a.p2, a.tail_tol, bracket) << '\n';
        });
        return kExitOk;
    }
    if (a.n1.empty() || a.n2.empty()) {
        throw InvalidConfig("pmf needs --n1 and --n2 windows, or --expected-pairs");
    }
    const IndexRange w1 = parse_range(a.n1);
    const IndexRange w2 = parse_range(a.n2);
    analysis::ConsumptionPmf pmf(r, param.alpha(), a.p1, a.p2);
    emit(a.out, out, [&](std::ostream& os) {
        os << csv::pmf_header() << '\n';
        for (std::uint64_t n1 = w1.lo; n1 <= w1.hi; ++n1) {
            for (std::uint64_t n2 = w2.lo; n2 <= w2.hi; ++n2) {
                csv::RowBuilder b;
                b.add(n1).add(n2).add(pmf(n1, n2));
                os << b.str() << '\n';
            }
        }
    });
    return kExitOk;
}

//---------------------------------------------------------------------------//
// reproduce
//---------------------------------------------------------------------------//

struct ReproduceArgs {
    std::string figure;
    std::uint64_t reps = 100000;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::size_t rho_points = 20;
    std::vector<double> mu;
    int workers = 0;
    std::string kernel = "parallel";
    bool with_se = false;
};

constexpr double kGridLow = 0.001;
constexpr double kGridHigh = 0.1;
constexpr std::size_t kExampleRatios = 25;
constexpr double kExampleMu = 0.04;

std::string ratio_tag(double bigR) { return "R" + csv::format_double(bigR); }

int cmd_reproduce(const ReproduceArgs& a, std::ostream& out)
{
    const auto& ids = figure_ids();
    if (std::find(ids.begin(), ids.end(), a.figure) == ids.end()) {
        throw InvalidConfig("unknown figure \"" + a.figure + "\"");
    }
    if (a.rho_points == 0) {
        throw InvalidConfig("--rho-points must be positive");
    }
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    const std::vector<double> grid = log_spaced(kGridLow, kGridHigh, a.rho_points);
    const std::vector<double> mus = a.mu.empty() ? std::vector<double>{0.01, 0.04, 0.09} : a.mu;
    const std::vector<double> example_mus = a.mu.empty() ? std::vector<double>{kExampleMu} : a.mu;
    const std::vector<double> ratios = log_spaced(1e-3, 1e3, kExampleRatios);

    std::vector<std::string> written;
    const auto write_file = [&](const std::string& name,
                                const std::function<void(std::ostream&)>& body) {
        const fs::path path = dir / name;
        emit(path.string(), out, body);
        written.push_back(path.string());
    };

    const std::string& f = a.figure;
    if (f == "sef-rr" || f.rfind("effic-", 0) == 0) {
        const std::string kind = f == "sef-rr" ? "rr" : f.substr(6);
        for (double bigR : {1.0, 10.0, 0.1}) {
            mc::SimulationPlan plan;
            plan.param = to_param(kind);
            plan.mu_bars = mus;
            plan.rhos = grid;
            plan.bigRs = {bigR};
            plan.replications = a.reps;
            plan.master_seed = a.seed;
            const auto rows = mc::run_grid(plan, run_options(a.workers, a.kernel));
            write_file(f + "_" + ratio_tag(bigR) + ".csv", [&](std::ostream& os) {
                csv::write_simulation(os, rows, a.with_se);
            });
        }
    } else if (f == "bounds-rr-lrr-example" || f == "bounds-or-lor-example") {
        const bool risk = f == "bounds-rr-lrr-example";
        for (const char* kind : risk ? std::vector<const char*>{"rr", "lrr"}
                                     : std::vector<const char*>{"or", "lor"}) {
            const TargetParameter param = to_param(kind);
            std::vector<csv::BoundsRow> rows;
            for (double mu : example_mus) {
                for (double bigR : ratios) {
                    for (double x : grid) {
                        if (risk) {
                            rows.push_back(csv::bounds_at_rho_ratio(param, mu, x, bigR));
                        } else {
                            // x is p_max here
                            const double rho = x * std::min(std::sqrt(bigR), 1.0 / std::sqrt(bigR));
                            csv::BoundsRow row = csv::bounds_at_rho_ratio(param, mu, rho, bigR);
                            row.p_max = x;
                            rows.push_back(std::move(row));
                        }
                    }
                }
                for (double x : grid) {
                    rows.push_back(risk ? csv::bounds_at_rho(param, mu, x)
                                        : csv::bounds_at_pmax(param, mu, x));
                }
            }
            write_file(f + "_" + kind + ".csv",
                       [&](std::ostream& os) { csv::write_bounds(os, rows); });
        }
    } else {
        const bool risk = f == "bound-rr-lrr";
        for (const char* kind : risk ? std::vector<const char*>{"rr", "lrr"}
                                     : std::vector<const char*>{"or", "lor"}) {
            const TargetParameter param = to_param(kind);
            std::vector<csv::BoundsRow> rows;
            for (double mu : mus) {
                for (double x : grid) {
                    rows.push_back(risk ? csv::bounds_at_rho(param, mu, x)
                                        : csv::bounds_at_pmax(param, mu, x));
                }
            }
            write_file(f + "_" + kind + ".csv",
                       [&](std::ostream& os) { csv::write_bounds(os, rows); });
        }
    }
    for (const std::string& path : written) {
        out << path << '\n';
    }
    return kExitOk;
}

//---------------------------------------------------------------------------//

void add_grid_options(CLI::App& cmd, GridArgs& g, bool with_pmax)
{
    cmd.add_option("--param", g.param, "Target parameter: rr, lrr, or, lor")->required();
    cmd.add_option("--mu,--mse", g.mu, "Target accuracy (relative MSE for rr/or, MSE for lrr/lor); list")
        ->required()
        ->delimiter(',');
    auto* rho = cmd.add_option("--rho", g.rho, "Geometric mean sqrt(p1 p2); list")->delimiter(',');
    auto* bigR = cmd.add_option("--R", g.bigR, "Ratio p1/p2; list")->delimiter(',');
    auto* p1 = cmd.add_option("--p1", g.p1, "Population 1 probability; list paired with --p2")
                   ->delimiter(',');
    auto* p2 = cmd.add_option("--p2", g.p2, "Population 2 probability; list paired with --p1")
                   ->delimiter(',');
    p1->needs(p2);
    p2->needs(p1);
    p1->excludes(rho)->excludes(bigR);
    bigR->needs(rho);
    if (with_pmax) {
        auto* pmax = cmd.add_option("--pmax", g.pmax, "max(p1, p2) for the or/lor bound; list")
                         ->delimiter(',');
        pmax->excludes(rho)->excludes(bigR)->excludes(p1)->excludes(p2);
    }
    cmd.add_option("--out", g.out, "Output CSV path (default: standard output)");
}

}  // namespace

const std::vector<std::string>& figure_ids()
{
    static const std::vector<std::string> ids = {
        "sef-rr",       "effic-rr",
        "effic-lrr",    "effic-or",
        "effic-lor",    "bounds-rr-lrr-example",
        "bound-rr-lrr", "bounds-or-lor-example",
        "bound-or-lor",
    };
    return ids;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sequential estimation of relative risk and odds ratio with guaranteed accuracy",
                 "ratioest"};
    app.require_subcommand(1);

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Run one estimation on simulated or recorded data");
    estimate->add_option("--param", est.param, "Target parameter: rr, lrr, or, lor")->required();
    estimate->add_option("--mu,--mse", est.mu, "Target accuracy (relative MSE for rr/or, MSE for lrr/lor)")
        ->required();
    auto* e_p1 = estimate->add_option("--p1", est.p1, "Population 1 probability (simulated mode)");
    auto* e_p2 = estimate->add_option("--p2", est.p2, "Population 2 probability (simulated mode)");
    estimate->add_option("--seed", est.seed, "Seed for the simulated populations and the coin");
    auto* e_replay = estimate->add_option("--replay", est.replay, "Replay recorded pairs from PATH");
    auto* e_record = estimate->add_option("--record", est.record, "Write the drawn pairs to PATH");
    estimate->add_option("--max-iterations", est.cap, "Iteration cap of one transform call");
    estimate->add_flag("--csv", est.csv, "Print the result as CSV");
    e_p1->needs(e_p2);
    e_p2->needs(e_p1);
    e_replay->excludes(e_p1)->excludes(e_p2)->excludes(e_record);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo study over a grid of cells");
    add_grid_options(*simulate, sim.grid, false);
    simulate->add_option("--reps", sim.reps, "Replications per cell")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    simulate->add_option("--workers", sim.workers,
                         "Worker threads (default: RATIOEST_WORKERS or all cores)");
    simulate->add_option("--kernel", sim.kernel, "Replication kernel: parallel or serial")
        ->check(CLI::IsMember({"parallel", "serial"}))
        ->capture_default_str();
    simulate->add_flag("--with-se", sim.with_se, "Append standard-error columns");

    GridArgs bnd;
    auto* bounds = app.add_subcommand("bounds", "Closed-form MSE, sampling and efficiency bounds");
    add_grid_options(*bounds, bnd, true);

    PmfArgs pm;
    auto* pmf = app.add_subcommand("pmf", "Exact joint pmf of (M1, M2) or the E[max(M1,M2)] bracket");
    pmf->add_option("--param", pm.param, "Target parameter: rr or lrr")->required();
    auto* pm_r = pmf->add_option("--r", pm.r, "Success threshold r");
    auto* pm_mu = pmf->add_option("--mu,--mse", pm.mu, "Target accuracy (sets r)");
    pm_r->excludes(pm_mu);
    pmf->add_option("--p1", pm.p1, "Population 1 probability")->required();
    pmf->add_option("--p2", pm.p2, "Population 2 probability")->required();
    pmf->add_option("--n1", pm.n1, "Window of n1 values, a:b");
    pmf->add_option("--n2", pm.n2, "Window of n2 values, a:b");
    pmf->add_flag("--expected-pairs", pm.expected_pairs, "Bracket E[max(M1,M2)] instead of a window");
    pmf->add_option("--tail-tol", pm.tail_tol, "Bracket width target")->capture_default_str();
    pmf->add_option("--max-shell", pm.max_shell, "Largest shell max(n1,n2) to enumerate")
        ->capture_default_str();
    pmf->add_option("--out", pm.out, "Output CSV path (default: standard output)");

    ReproduceArgs rep;
    auto* reproduce = app.add_subcommand("reproduce", "Regenerate figure data as CSV files");
    std::string figure_list;
    for (const auto& id : figure_ids()) {
        figure_list += (figure_list.empty() ? "" : ", ") + id;
    }
    reproduce->add_option("figure", rep.figure, "One of: " + figure_list)->required();
    reproduce->add_option("--reps", rep.reps, "Replications per cell")->capture_default_str();
    reproduce->add_option("--seed", rep.seed, "Master seed")->capture_default_str();
    reproduce->add_option("--out-dir", rep.out_dir, "Directory for the CSV files")
        ->capture_default_str();
    reproduce->add_option("--rho-points", rep.rho_points, "Points on the log-spaced rho grid")
        ->capture_default_str();
    reproduce->add_option("--mu,--mse", rep.mu, "Override the target accuracies; list")
        ->delimiter(',');
    reproduce->add_option("--workers", rep.workers,
                          "Worker threads (default: RATIOEST_WORKERS or all cores)");
    reproduce->add_option("--kernel", rep.kernel, "Replication kernel: parallel or serial")
        ->check(CLI::IsMember({"parallel", "serial"}))
        ->capture_default_str();
    reproduce->add_flag("--with-se", rep.with_se, "Append standard-error columns");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*estimate) {
            if (est.replay.empty() && !est.p1) {
                throw InvalidConfig("estimate needs --p1/--p2 (simulated) or --replay PATH");
            }
            return cmd_estimate(est, out);
        }
        if (*simulate) {
            return cmd_simulate(sim, out);
        }
        if (*bounds) {
            return cmd_bounds(bnd, out);
        }
        if (*pmf) {
            return cmd_pmf(pm, out, err);
        }
        return cmd_reproduce(rep, out);
    } catch (const ReplayExhausted& e) {
        print_partial(err, e);
        return kExitExhausted;
    } catch (const NumericFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace ratioest::cli
