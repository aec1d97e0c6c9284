#pragma once

#include <cstdint>
#include <vector>

#include "bai/bandit.hpp"
#include "bai/prior.hpp"
#include "bai/rng.hpp"

// The four policies behind one contract: choose arms, decide stopping,
// recommend. Each *_policy_run consumes two streams: `reward` drives the
// observations, `policy` drives policy-internal randomness (posterior samples,
// coin flips, the uniform recommendation at an early stop). All comparisons
// against thresholds are strict <= / >= on doubles with no epsilon: the
// thresholds already carry slack, and epsilon fudging would break replays.
//
// Elimination with early stopping, per round over the active set A(t):
//   pull every arm in A(t) once;
//   UCB/LCB = empirical mean +- Conf from the post-pull counts;
//   remove every arm whose UCB <= max LCB over the pre-removal A(t);
//   stop with the survivor if |A(t)| = 1, else stop uniformly over A(t)
//   once max UCB - max LCB <= Delta_0.
//
// The confidence width with k total arms is
//   Conf(i, t) = sqrt(2 sigma_i^2 log(6 N_i^2 / ((delta^2 / 2k) pi^2)) / N_i).

namespace bai {

// Throws std::invalid_argument on n < 1, delta outside (0, 1), or k < 2.
double conf_width(double sigma, std::int64_t n, double delta, int k);

struct Interval {
    double lcb;
    double ucb;
};

struct ElimState {
    std::vector<int> active;          // A(t), ascending arm index, never regrows
    HistoryStats stats;
    std::vector<double> sigma;        // reward standard deviations
    double delta;
    double delta0;
    int k;

    // Diagnostics filled in by elimination rounds.
    bool coverage_miss = false;
    bool best_dropped = false;

    ElimState(const BanditModel& model, double delta_, double delta0_);
};

// UCB/LCB of one arm from current stats. Throws std::logic_error if the arm
// was never pulled.
Interval bounds(const ElimState& state, int arm);

// One round: pull every active arm once, then apply the simultaneous
// elimination test with max LCB taken over the pre-removal active set. The
// true model is consulted only for reward sampling and for the coverage /
// best-dropped diagnostics, never for decisions.
void elim_round(ElimState& state, const BanditModel& model, Rng& reward_rng);

// max UCB - max LCB over the active set, clamped at zero (the difference can
// go negative only through floating error). Throws std::logic_error if any
// active arm is unpulled.
double safe_gap(const ElimState& state);

inline constexpr std::int64_t kDefaultPullCap = 1000000000;

// Core elimination runners with Delta_0 passed in; Delta_0 is a pure function
// of (prior, delta), so the harness computes it once per experiment instead of
// re-integrating per trial.
TrialResult run_elim_trial(const BanditModel& model, double delta, double delta0,
                           Rng& reward_rng, Rng& policy_rng, std::int64_t pull_cap);
TrialResult run_noelim_trial(const BanditModel& model, double delta, double delta0,
                             Rng& reward_rng, Rng& policy_rng, std::int64_t pull_cap);

TrialResult elim_policy_run(const BanditModel& model, const Prior& prior, double delta,
                            Rng& reward_rng, Rng& policy_rng,
                            std::int64_t pull_cap = kDefaultPullCap);

// Identical control flow except every round pulls all k arms; elimination
// still shrinks the stop-test set. At k = 2 this coincides with
// elim_policy_run pull for pull.
TrialResult noelim_policy_run(const BanditModel& model, const Prior& prior, double delta,
                              Rng& reward_rng, Rng& policy_rng,
                              std::int64_t pull_cap = kDefaultPullCap);

// Baseline state shared by the two top-two policies.
struct TopTwoState {
    HistoryStats stats;
    double delta;
    double beta;                                // top-two split, 1/2 here
    std::vector<std::int64_t> leader_rounds;    // tracking bookkeeping (UCB variant)

    TopTwoState(int k, double delta_, double beta_)
        : stats(k), delta(delta_), beta(beta_),
          leader_rounds(static_cast<std::size_t>(k), 0) {}
};

// Transport statistic for the threshold stopping rule: with ihat the empirical
// best arm, returns min over b != ihat of
//   Z_{ihat,b} = N_ihat KL_ihat(muhat_ihat, muhat_pool) + N_b KL_b(muhat_b, muhat_pool)
// where muhat_pool is the pull-count-weighted mean of the pair. Requires every
// arm pulled at least once.
double ttts_stop_stat(const HistoryStats& stats, const std::vector<double>& sigma);

// Threshold c(n, delta) = 2 Cg(log((k-1)/delta) / 2) + 4 log(4 + log(n / 2))
// with Cg(x) ~ x + log x, clamped at zero for extreme delta.
double ttucb_threshold(std::int64_t n, double delta, int k);

// min over i != ihat of (muhat_ihat - muhat_i) / sqrt(1/N_ihat + 1/N_i).
double ttucb_stop_stat(const HistoryStats& stats);

// Top-two Thompson sampling with the conjugate Gaussian posterior, split
// beta = 1/2, and the threshold log(t / delta) on the transport statistic.
TrialResult ttts_policy_run(const BanditModel& model, const Prior& prior, double delta,
                            Rng& reward_rng, Rng& policy_rng,
                            std::int64_t pull_cap = kDefaultPullCap);

// Top-two UCB: leader maximizes the UCB index, challenger minimizes the
// transport cost, deterministic half-tracking decides between them; stops when
// ttucb_stop_stat >= sqrt(c(t, delta)).
TrialResult ttucb_policy_run(const BanditModel& model, const Prior& prior, double delta,
                             Rng& reward_rng, Rng& policy_rng,
                             std::int64_t pull_cap = kDefaultPullCap);

}  // namespace bai
