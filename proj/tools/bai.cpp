// Command-line front end: prior-hardness constants, budget and lower-bound
// reports, Monte Carlo experiment runs, and the uniform-allocation check.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bai/bounds.hpp"
#include "bai/harness.hpp"
#include "bai/prior.hpp"
#include "bai/rng.hpp"

namespace {

bai::Prior standard_two_arm() {
    return bai::Prior{{{0.0, 1.0, 1.0}, {0.0, 1.0, 1.0}}};
}

void add_compute_l(CLI::App& app, int& exit_code) {
    auto* cmd = app.add_subcommand(
        "compute-l", "Prior-hardness constant L and the indifference threshold");
    auto prior_path = std::make_shared<std::string>();
    auto delta = std::make_shared<double>(0.0);
    auto implicit = std::make_shared<bool>(false);
    auto samples = std::make_shared<std::int64_t>(200000);
    auto seed = std::make_shared<std::uint64_t>(1);
    cmd->add_option("--prior", *prior_path, "prior file, one 'm xi sigma' line per arm")
        ->required();
    auto* o_delta =
        cmd->add_option("--delta", *delta, "risk level; prints Delta_0 = delta / (4 L)");
    cmd->add_flag("--implicit-delta0", *implicit,
                  "also print the gap-quantile variant of Delta_0 (needs --delta)");
    cmd->add_option("--samples", *samples, "model draws for the implicit variant");
    cmd->add_option("--seed", *seed, "seed for the implicit variant");
    cmd->callback([=, &exit_code]() {
        const bai::Prior prior = bai::parse_prior_file(*prior_path);
        std::cout << "k = " << prior.k() << '\n';
        std::cout << "L = " << bai::fmt7(bai::l_total(prior)) << '\n';
        if (*o_delta) {
            std::cout << "delta0 = " << bai::fmt7(bai::delta0(prior, *delta)) << '\n';
            if (*implicit) {
                bai::Rng rng(*seed);
                std::cout << "delta0_implicit = "
                          << bai::fmt7(bai::delta0_implicit(prior, *delta, *samples, rng))
                          << '\n';
            }
        } else if (*implicit) {
            std::cerr << "error: --implicit-delta0 needs --delta\n";
            exit_code = 1;
        }
    });
}

void add_budget(CLI::App& app, int&) {
    auto* cmd = app.add_subcommand(
        "budget", "Worst-case stopping-time budget of the elimination policy");
    auto prior_path = std::make_shared<std::string>();
    auto delta = std::make_shared<double>(0.1);
    cmd->add_option("--prior", *prior_path, "prior file")->required();
    cmd->add_option("--delta", *delta, "risk level")->required();
    cmd->callback([=]() {
        const bai::Prior prior = bai::parse_prior_file(*prior_path);
        const bai::BudgetReport r = bai::upper_budget(prior, *delta);
        std::cout << "k = " << r.k << '\n'
                  << "B = " << bai::fmt7(r.b) << '\n'
                  << "B0 = " << bai::fmt7(r.b0) << '\n'
                  << "delta_thr = " << bai::fmt7(r.delta_thr) << '\n'
                  << "delta0 = " << bai::fmt7(r.delta0) << '\n'
                  << "R0(delta0) = " << r.r0_of_delta0 << '\n'
                  << "T0 = " << r.t0 << '\n';
    });
}

void add_lower_bound(CLI::App& app, int&) {
    auto* cmd = app.add_subcommand(
        "lower-bound", "Sample-complexity floor and small-delta thresholds");
    auto prior_path = std::make_shared<std::string>();
    auto delta = std::make_shared<double>(0.1);
    auto reading = std::make_shared<std::string>("sd");
    cmd->add_option("--prior", *prior_path, "prior file")->required();
    cmd->add_option("--delta", *delta, "risk level")->required();
    cmd->add_option("--sigma-min-reading", *reading,
                    "interpret the sigma_min^2 factor from the smallest reward sd "
                    "(sd) or the smallest reward variance (var)")
        ->check(CLI::IsMember({"sd", "var"}));
    cmd->callback([=]() {
        const bai::Prior prior = bai::parse_prior_file(*prior_path);
        const auto r = *reading == "sd" ? bai::SigmaMinReading::StdDev
                                        : bai::SigmaMinReading::Variance;
        const bai::SmallDeltaThresholds th = bai::small_delta_thresholds(prior);
        std::cout << "N_V = " << bai::fmt7(bai::n_v(prior, *delta, r)) << '\n'
                  << "delta_L = " << bai::fmt7(th.delta_l) << '\n'
                  << "D0 = " << bai::fmt7(th.d0) << '\n'
                  << "D1 = " << bai::fmt7(th.d1) << '\n';
        if (th.d0_nonpositive)
            std::cout << "note: D0 <= 0 at this prior, so delta_L <= 0 and the "
                         "small-delta validity window is empty\n";
    });
}

void add_run(CLI::App& app, int&) {
    auto* cmd = app.add_subcommand("run", "Monte Carlo experiment for one policy");
    auto config_path = std::make_shared<std::string>();
    auto prior_path = std::make_shared<std::string>();
    auto policy_name = std::make_shared<std::string>();
    auto delta = std::make_shared<double>(0.1);
    auto trials = std::make_shared<int>(100);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto pull_cap = std::make_shared<std::int64_t>(bai::kDefaultPullCap);
    auto paired = std::make_shared<bool>(true);
    auto workers = std::make_shared<int>(0);
    auto out_path = std::make_shared<std::string>();
    auto format_name = std::make_shared<std::string>("csv");
    auto* o_config = cmd->add_option("--config", *config_path, "'key = value' file");
    auto* o_prior =
        cmd->add_option("--prior", *prior_path, "prior file (overrides config arms)");
    auto* o_policy = cmd->add_option("--policy", *policy_name, "elim|noelim|ttts|ttucb")
                         ->check(CLI::IsMember({"elim", "noelim", "ttts", "ttucb"}));
    auto* o_delta = cmd->add_option("--delta", *delta, "risk level");
    auto* o_trials = cmd->add_option("--trials", *trials, "number of trials");
    auto* o_seed = cmd->add_option("--seed", *seed, "master seed");
    auto* o_cap = cmd->add_option("--pull-cap", *pull_cap, "per-trial pull budget");
    auto* o_paired = cmd->add_flag(
        "--paired,!--unpaired", *paired,
        "share model draws across policies at equal seed (default on)");
    cmd->add_option("--workers", *workers, "worker threads, 0 = hardware");
    auto* o_out = cmd->add_option("--out", *out_path, "write per-trial results here");
    cmd->add_option("--format", *format_name, "output format for --out")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->callback([=]() {
        bai::ExperimentConfig cfg;
        if (*o_config) cfg = bai::parse_config_file(*config_path);
        if (*o_prior) cfg.prior = bai::parse_prior_file(*prior_path);
        if (*o_policy) cfg.policy = bai::parse_policy(*policy_name);
        if (*o_delta) cfg.delta = *delta;
        if (*o_trials) cfg.n_trials = *trials;
        if (*o_seed) cfg.master_seed = *seed;
        if (*o_cap) cfg.pull_cap = *pull_cap;
        if (*o_paired) cfg.paired = *paired;
        cfg.workers = *workers;
        const bai::Summary summary = bai::run_experiment(cfg);
        std::cout << bai::format_summary_table({{bai::to_string(cfg.policy), summary}});
        if (*o_out) {
            const auto format = *format_name == "csv" ? bai::OutputFormat::Csv
                                                      : bai::OutputFormat::Json;
            bai::write_output(cfg, summary, format, *out_path);
            std::cerr << "wrote " << *out_path << '\n';
        }
    });
}

void add_verify_opt3(CLI::App& app, int& exit_code) {
    auto* cmd = app.add_subcommand(
        "verify-opt3",
        "Check that the uniform allocation minimizes the near-tie error bound");
    auto prior_path = std::make_shared<std::string>();
    auto delta = std::make_shared<double>(0.05);
    auto cells = std::make_shared<int>(40);
    auto samples = std::make_shared<int>(200);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto* o_prior =
        cmd->add_option("--prior", *prior_path, "two-arm prior file (default standard)");
    cmd->add_option("--delta", *delta, "risk level; gap = 8 delta / L");
    cmd->add_option("--cells", *cells, "strips discretizing the near-tie band");
    cmd->add_option("--samples", *samples, "random feasible allocations to compare");
    cmd->add_option("--seed", *seed, "seed for the random allocations");
    cmd->callback([=, &exit_code]() {
        const bai::Prior prior =
            *o_prior ? bai::parse_prior_file(*prior_path) : standard_two_arm();
        const double gap = 8.0 * *delta / bai::l_total(prior);
        const double budget = bai::n_v(prior, *delta);
        bai::Rng rng(*seed);
        const bai::Opt3Report r =
            bai::verify_opt3(prior, *delta, gap, budget, *cells, *samples, rng);
        std::cout << "gap = " << bai::fmt7(r.gap) << '\n'
                  << "budget = " << bai::fmt7(r.budget) << '\n'
                  << "cells = " << r.cells << '\n'
                  << "samples = " << r.trials << '\n'
                  << "V(uniform) = " << bai::fmt7(r.uniform_value) << '\n'
                  << "V(best sampled) = " << bai::fmt7(r.best_sampled_value) << '\n'
                  << "V(worst sampled) = " << bai::fmt7(r.worst_sampled_value) << '\n'
                  << "uniform optimal: " << (r.uniform_optimal ? "yes" : "no") << '\n';
        if (!r.uniform_optimal) exit_code = 1;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-confidence best-arm identification in Gaussian bandits "
                 "with a Gaussian prior"};
    app.require_subcommand(1);
    int exit_code = 0;
    add_compute_l(app, exit_code);
    add_budget(app, exit_code);
    add_lower_bound(app, exit_code);
    add_run(app, exit_code);
    add_verify_opt3(app, exit_code);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
