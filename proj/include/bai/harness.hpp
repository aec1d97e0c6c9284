#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bai/algorithms.hpp"
#include "bai/bandit.hpp"
#include "bai/prior.hpp"

// Monte Carlo experiment driver. Each trial draws a model from the prior,
// runs one policy to its stopping time, and the results are aggregated into
// average / maximum stopping time and error rate.
//
// Reproducibility contract: trial i's streams are derived from
// (master_seed, i, purpose) only, so results are independent of worker count
// and scheduling, and a rerun with the same config is byte-identical (up to
// the wall-time field). With paired = true the model stream ignores the
// policy, so experiments that differ only in policy face identical instance
// sequences; paired = false folds the policy tag into the model stream.

namespace bai {

enum class PolicyKind {
    Elimination,    // adaptive elimination with the early-stop test
    NoElimination,  // same tests, but every round pulls all k arms
    Ttts,           // top-two Thompson sampling baseline
    Ttucb,          // top-two UCB baseline
};

const char* to_string(PolicyKind policy);

// Inverse of to_string ("elim", "noelim", "ttts", "ttucb"); throws
// std::invalid_argument on anything else.
PolicyKind parse_policy(std::string_view name);

struct ExperimentConfig {
    Prior prior;
    double delta = 0.1;
    PolicyKind policy = PolicyKind::Elimination;
    int n_trials = 100;
    std::uint64_t master_seed = 1;
    std::int64_t pull_cap = kDefaultPullCap;
    bool paired = true;
    int workers = 0;  // 0: one thread per hardware core; never affects results
};

struct Summary {
    double avg_tau = 0.0;      // over all trials, truncated ones at tau == cap
    std::int64_t max_tau = 0;
    double error_rate = 0.0;   // wrong / completed; truncated trials excluded
    int n_truncated = 0;
    double wall_time_s = 0.0;
    std::vector<TrialResult> per_trial;  // trial-index order
};

// The instance trial i faces, a pure function of (config, i). Exposed so the
// pairing guarantee is directly testable.
BanditModel model_for_trial(const ExperimentConfig& cfg, int trial);

// Validates the config, runs all trials (in parallel when workers allows),
// aggregates. Throws std::invalid_argument on a bad config.
Summary run_experiment(const ExperimentConfig& cfg);

// Statistics over per-trial results. error_rate is 0 when every trial was
// truncated (no completed trial to be wrong).
Summary aggregate(std::vector<TrialResult> per_trial);

enum class OutputFormat { Csv, Json };

// CSV: header plus one row per trial with columns
//   trial_index,seed,tau,recommendation,correct,stop_reason
// where seed is the trial's stream seed root. JSON: config, summary and the
// same per-trial records. Both are locale-independent and deterministic given
// (cfg, results); wall_time_s appears only in the JSON summary block.
std::string render_output(const ExperimentConfig& cfg, const Summary& summary,
                          OutputFormat format);

// render_output to a file; throws std::runtime_error naming the path on I/O
// failure.
void write_output(const ExperimentConfig& cfg, const Summary& summary,
                  OutputFormat format, const std::string& path);

// Fixed-width table with one row per labelled summary: average and maximum
// stopping time, error rate, truncation count.
std::string format_summary_table(
    const std::vector<std::pair<std::string, Summary>>& rows);

// One arm per line, "m xi sigma", '#' starts a comment, blank lines ignored.
// Throws std::runtime_error naming path and line on malformed input.
Prior parse_prior_file(const std::string& path);

// "key = value" lines with '#' comments. Keys: delta, policy, trials, seed,
// pull_cap, paired, and one "arm = m xi sigma" line per arm (omitted when the
// prior comes from a separate file). Unknown keys are errors.
ExperimentConfig parse_config_file(const std::string& path);

// At most 7 significant digits, locale-independent.
std::string fmt7(double x);

}  // namespace bai
