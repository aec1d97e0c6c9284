#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bai/prior.hpp"
#include "bai/rng.hpp"

// Interaction protocol: reward sampling, pull accounting, divergences.

namespace bai {

// Pull counts and reward sums per arm. The clock follows the "before timestep
// t" convention: clock == total pulls so far + 1, so clock - 1 == sum(pulls).
struct HistoryStats {
    std::vector<std::int64_t> pulls;
    std::vector<double> sums;
    std::int64_t clock = 1;

    explicit HistoryStats(int k)
        : pulls(static_cast<std::size_t>(k), 0), sums(static_cast<std::size_t>(k), 0.0) {}

    // Empirical mean, defined only once the arm has been pulled. Recomputed
    // from sums / pulls on demand so the bookkeeping never drifts.
    double mean(int i) const {
        return sums[static_cast<std::size_t>(i)] /
               static_cast<double>(pulls[static_cast<std::size_t>(i)]);
    }
};

enum class StopReason {
    SingleSurvivor,     // elimination left one active arm
    EarlyStop,          // safe gap fell below Delta_0, uniform recommendation
    BaselineThreshold,  // a baseline's stopping statistic crossed its threshold
    Truncated,          // per-trial pull cap hit; tau == cap
};

const char* to_string(StopReason reason);

struct TrialResult {
    std::int64_t tau = 0;      // total pulls at stopping
    int recommendation = -1;   // J
    bool correct = false;      // J attains max of the true means
    std::vector<std::int64_t> pulls;
    StopReason stop_reason = StopReason::SingleSurvivor;

    // Diagnostics.
    std::int64_t rounds = 0;      // elimination-family round count
    bool coverage_miss = false;   // some computed interval missed its true mean
    bool best_dropped = false;    // the true best arm left the active set

    bool truncated() const { return stop_reason == StopReason::Truncated; }
};

// KL(N(a, sigma^2) || N(b, sigma^2)) = (a - b)^2 / (2 sigma^2).
// Throws std::invalid_argument on sigma <= 0.
double kl_gaussian(double a, double b, double sigma);

// Bernoulli KL d(a, b) with the 0 log 0 = 0 convention at a in {0, 1}.
// Throws std::invalid_argument unless a in [0, 1] and b in (0, 1).
double kl_bernoulli(double a, double b);

// One observation X ~ N(mu_arm, sigma_arm^2). Throws std::out_of_range on a
// bad index. Recording is the caller's job (record_pull).
double sample_reward(const BanditModel& model, int arm, Rng& rng);

void record_pull(HistoryStats& stats, int arm, double reward);

// (argmax, argmax of the rest); exact ties broken by lowest index.
std::pair<int, int> best_and_second(const std::vector<double>& mu);

}  // namespace bai
