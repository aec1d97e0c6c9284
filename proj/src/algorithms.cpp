#include "bai/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bai {

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

// Arms never pulled (possible only under a pull cap below k) are skipped.
int empirical_best_among(const HistoryStats& stats, const std::vector<int>& arms) {
    int best = -1;
    for (int a : arms) {
        if (stats.pulls[static_cast<std::size_t>(a)] < 1) continue;
        if (best < 0 || stats.mean(a) > stats.mean(best)) best = a;
    }
    return best < 0 ? arms[0] : best;
}

int empirical_best(const HistoryStats& stats) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(stats.pulls.size()); ++i) {
        if (stats.pulls[static_cast<std::size_t>(i)] < 1) continue;
        if (best < 0 || stats.mean(i) > stats.mean(best)) best = i;
    }
    return best < 0 ? 0 : best;
}

bool is_correct(const BanditModel& model, int recommendation) {
    // Any maximizer counts as correct under an exact tie.
    const int best = best_and_second(model.mu).first;
    return model.mu[static_cast<std::size_t>(recommendation)] ==
           model.mu[static_cast<std::size_t>(best)];
}

TrialResult finish(const HistoryStats& stats, const BanditModel& model,
                   int recommendation, StopReason reason, std::int64_t rounds,
                   bool coverage_miss, bool best_dropped) {
    TrialResult r;
    r.tau = stats.clock - 1;
    r.recommendation = recommendation;
    r.correct = is_correct(model, recommendation);
    r.pulls = stats.pulls;
    r.stop_reason = reason;
    r.rounds = rounds;
    r.coverage_miss = coverage_miss;
    r.best_dropped = best_dropped;
    return r;
}

}  // namespace

double conf_width(double sigma, std::int64_t n, double delta, int k) {
    if (n < 1) throw std::invalid_argument("conf_width: n must be at least 1");
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("conf_width: delta must be in (0, 1)");
    if (k < 2) throw std::invalid_argument("conf_width: k must be at least 2");
    const double nn = static_cast<double>(n);
    const double log_arg = 6.0 * nn * nn / ((delta * delta / (2.0 * k)) * kPiSq);
    return std::sqrt(2.0 * sigma * sigma * std::log(log_arg) / nn);
}

ElimState::ElimState(const BanditModel& model, double delta_, double delta0_)
    : stats(model.k()), sigma(model.sigma), delta(delta_), delta0(delta0_),
      k(model.k()) {
    active.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) active[static_cast<std::size_t>(i)] = i;
}

Interval bounds(const ElimState& state, int arm) {
    const auto i = static_cast<std::size_t>(arm);
    if (state.stats.pulls[i] < 1)
        throw std::logic_error("bounds: arm has never been pulled");
    const double mean = state.stats.mean(arm);
    const double conf =
        conf_width(state.sigma[i], state.stats.pulls[i], state.delta, state.k);
    return {mean - conf, mean + conf};
}

namespace {

// Shared elimination step: compute bounds from post-pull stats, remove every
// active arm whose UCB <= max LCB over the pre-removal active set, and update
// the coverage / best-dropped diagnostics.
void eliminate(ElimState& state, const BanditModel& model) {
    const std::size_t n_active = state.active.size();
    std::vector<Interval> ivs(n_active);
    double max_lcb = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n_active; ++a) {
        ivs[a] = bounds(state, state.active[a]);
        max_lcb = std::max(max_lcb, ivs[a].lcb);
        const double mu = model.mu[static_cast<std::size_t>(state.active[a])];
        if (mu < ivs[a].lcb || mu > ivs[a].ucb) state.coverage_miss = true;
    }
    std::vector<int> survivors;
    survivors.reserve(n_active);
    for (std::size_t a = 0; a < n_active; ++a)
        if (!(ivs[a].ucb <= max_lcb)) survivors.push_back(state.active[a]);
    state.active = std::move(survivors);
    const int best = best_and_second(model.mu).first;
    if (!std::binary_search(state.active.begin(), state.active.end(), best))
        state.best_dropped = true;
}

}  // namespace

void elim_round(ElimState& state, const BanditModel& model, Rng& reward_rng) {
    for (int arm : state.active)
        record_pull(state.stats, arm, sample_reward(model, arm, reward_rng));
    eliminate(state, model);
}

double safe_gap(const ElimState& state) {
    double max_ucb = -std::numeric_limits<double>::infinity();
    double max_lcb = -std::numeric_limits<double>::infinity();
    for (int arm : state.active) {
        const Interval iv = bounds(state, arm);
        max_ucb = std::max(max_ucb, iv.ucb);
        max_lcb = std::max(max_lcb, iv.lcb);
    }
    return std::max(max_ucb - max_lcb, 0.0);
}

namespace {

// pull_all switches between the two sampling lines: the active set only, or
// every arm regardless of eliminations.
TrialResult run_elimination_family(const BanditModel& model, double delta,
                                   double delta0, Rng& reward_rng, Rng& policy_rng,
                                   std::int64_t pull_cap, bool pull_all) {
    ElimState state(model, delta, delta0);
    std::int64_t rounds = 0;
    for (;;) {
        const std::int64_t round_pulls =
            pull_all ? state.k : static_cast<std::int64_t>(state.active.size());
        if (state.stats.clock - 1 + round_pulls > pull_cap) {
            // Finish exactly at the cap: pull one by one until it is hit.
            if (pull_all) {
                for (int arm = 0; arm < state.k && state.stats.clock - 1 < pull_cap;
                     ++arm)
                    record_pull(state.stats, arm, sample_reward(model, arm, reward_rng));
            } else {
                for (std::size_t a = 0;
                     a < state.active.size() && state.stats.clock - 1 < pull_cap; ++a)
                    record_pull(state.stats, state.active[a],
                                sample_reward(model, state.active[a], reward_rng));
            }
            const int rec = empirical_best_among(state.stats, state.active);
            return finish(state.stats, model, rec, StopReason::Truncated, rounds,
                          state.coverage_miss, state.best_dropped);
        }
        if (pull_all) {
            for (int arm = 0; arm < state.k; ++arm)
                record_pull(state.stats, arm, sample_reward(model, arm, reward_rng));
            eliminate(state, model);
        } else {
            elim_round(state, model, reward_rng);
        }
        ++rounds;
        if (state.active.size() == 1)
            return finish(state.stats, model, state.active[0],
                          StopReason::SingleSurvivor, rounds, state.coverage_miss,
                          state.best_dropped);
        if (safe_gap(state) <= state.delta0) {
            const int rec = state.active[static_cast<std::size_t>(
                policy_rng.below(state.active.size()))];
            return finish(state.stats, model, rec, StopReason::EarlyStop, rounds,
                          state.coverage_miss, state.best_dropped);
        }
    }
}

}  // namespace

TrialResult run_elim_trial(const BanditModel& model, double delta, double delta0,
                           Rng& reward_rng, Rng& policy_rng, std::int64_t pull_cap) {
    return run_elimination_family(model, delta, delta0, reward_rng, policy_rng,
                                  pull_cap, false);
}

TrialResult run_noelim_trial(const BanditModel& model, double delta, double delta0,
                             Rng& reward_rng, Rng& policy_rng, std::int64_t pull_cap) {
    return run_elimination_family(model, delta, delta0, reward_rng, policy_rng,
                                  pull_cap, true);
}

TrialResult elim_policy_run(const BanditModel& model, const Prior& prior, double delta,
                            Rng& reward_rng, Rng& policy_rng, std::int64_t pull_cap) {
    return run_elim_trial(model, delta, delta0(prior, delta), reward_rng, policy_rng,
                          pull_cap);
}

TrialResult noelim_policy_run(const BanditModel& model, const Prior& prior,
                              double delta, Rng& reward_rng, Rng& policy_rng,
                              std::int64_t pull_cap) {
    return run_noelim_trial(model, delta, delta0(prior, delta), reward_rng, policy_rng,
                            pull_cap);
}

double ttts_stop_stat(const HistoryStats& stats, const std::vector<double>& sigma) {
    const int k = static_cast<int>(stats.pulls.size());
    const int ihat = empirical_best(stats);
    const double ni = static_cast<double>(stats.pulls[static_cast<std::size_t>(ihat)]);
    const double mi = stats.mean(ihat);
    double min_z = std::numeric_limits<double>::infinity();
    for (int b = 0; b < k; ++b) {
        if (b == ihat) continue;
        const double nb = static_cast<double>(stats.pulls[static_cast<std::size_t>(b)]);
        const double mb = stats.mean(b);
        const double pool = (ni * mi + nb * mb) / (ni + nb);
        const double z =
            ni * kl_gaussian(mi, pool, sigma[static_cast<std::size_t>(ihat)]) +
            nb * kl_gaussian(mb, pool, sigma[static_cast<std::size_t>(b)]);
        min_z = std::min(min_z, z);
    }
    return min_z;
}

double ttucb_threshold(std::int64_t n, double delta, int k) {
    const double x = 0.5 * std::log(static_cast<double>(k - 1) / delta);
    const double cg = x + std::log(x);
    const double c =
        2.0 * cg + 4.0 * std::log(4.0 + std::log(static_cast<double>(n) / 2.0));
    return std::max(c, 0.0);
}

double ttucb_stop_stat(const HistoryStats& stats) {
    const int k = static_cast<int>(stats.pulls.size());
    const int ihat = empirical_best(stats);
    const double ni = static_cast<double>(stats.pulls[static_cast<std::size_t>(ihat)]);
    const double mi = stats.mean(ihat);
    double min_w = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
        if (i == ihat) continue;
        const double nn = static_cast<double>(stats.pulls[static_cast<std::size_t>(i)]);
        const double w = (mi - stats.mean(i)) / std::sqrt(1.0 / ni + 1.0 / nn);
        min_w = std::min(min_w, w);
    }
    return min_w;
}

namespace {

// One joint draw from the per-arm conjugate Gaussian posterior.
void posterior_sample(const Prior& prior, const HistoryStats& stats, Rng& rng,
                      std::vector<double>& out) {
    for (int i = 0; i < prior.k(); ++i) {
        const ArmPrior& a = prior.arms[static_cast<std::size_t>(i)];
        const auto idx = static_cast<std::size_t>(i);
        const double precision =
            1.0 / (a.xi * a.xi) +
            static_cast<double>(stats.pulls[idx]) / (a.sigma * a.sigma);
        const double variance = 1.0 / precision;
        const double mean =
            variance * (a.m / (a.xi * a.xi) + stats.sums[idx] / (a.sigma * a.sigma));
        out[idx] = mean + std::sqrt(variance) * rng.normal();
    }
}

int argmax(const std::vector<double>& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(best)]) best = i;
    return best;
}

int second_highest(const std::vector<double>& v, int top) {
    int second = top == 0 ? 1 : 0;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (i == top) continue;
        if (v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(second)])
            second = i;
    }
    return second;
}

}  // namespace

TrialResult ttts_policy_run(const BanditModel& model, const Prior& prior, double delta,
                            Rng& reward_rng, Rng& policy_rng, std::int64_t pull_cap) {
    const int k = model.k();
    TopTwoState state(k, delta, 0.5);
    for (int arm = 0; arm < k; ++arm) {
        if (state.stats.clock - 1 >= pull_cap)
            return finish(state.stats, model, empirical_best(state.stats),
                          StopReason::Truncated, 0, false, false);
        record_pull(state.stats, arm, sample_reward(model, arm, reward_rng));
    }
    std::vector<double> theta(static_cast<std::size_t>(k));
    for (;;) {
        const std::int64_t t = state.stats.clock - 1;
        if (ttts_stop_stat(state.stats, model.sigma) >=
            std::log(static_cast<double>(t) / delta))
            return finish(state.stats, model, empirical_best(state.stats),
                          StopReason::BaselineThreshold, 0, false, false);
        if (t >= pull_cap)
            return finish(state.stats, model, empirical_best(state.stats),
                          StopReason::Truncated, 0, false, false);
        posterior_sample(prior, state.stats, policy_rng, theta);
        const int leader = argmax(theta);
        int arm = leader;
        if (!(policy_rng.u01() < state.beta)) {
            // Challenger. With two arms it is definitionally the other arm;
            // otherwise resample for a different argmax, falling back to the
            // second-highest coordinate of the last resample.
            if (k == 2) {
                arm = 1 - leader;
            } else {
                arm = -1;
                for (int attempt = 0; attempt < 32; ++attempt) {
                    posterior_sample(prior, state.stats, policy_rng, theta);
                    const int candidate = argmax(theta);
                    if (candidate != leader) {
                        arm = candidate;
                        break;
                    }
                }
                if (arm < 0) arm = second_highest(theta, leader);
            }
        }
        record_pull(state.stats, arm, sample_reward(model, arm, reward_rng));
    }
}

TrialResult ttucb_policy_run(const BanditModel& model, const Prior& prior, double delta,
                             Rng& reward_rng, Rng& policy_rng, std::int64_t pull_cap) {
    (void)prior;       // the UCB variant needs no posterior
    (void)policy_rng;  // fully deterministic given the reward stream
    const int k = model.k();
    TopTwoState state(k, delta, 0.5);
    for (int arm = 0; arm < k; ++arm) {
        if (state.stats.clock - 1 >= pull_cap)
            return finish(state.stats, model, empirical_best(state.stats),
                          StopReason::Truncated, 0, false, false);
        record_pull(state.stats, arm, sample_reward(model, arm, reward_rng));
    }
    for (;;) {
        const std::int64_t t = state.stats.clock - 1;
        if (ttucb_stop_stat(state.stats) >= std::sqrt(ttucb_threshold(t, delta, k)))
            return finish(state.stats, model, empirical_best(state.stats),
                          StopReason::BaselineThreshold, 0, false, false);
        if (t >= pull_cap)
            return finish(state.stats, model, empirical_best(state.stats),
                          StopReason::Truncated, 0, false, false);
        int leader = 0;
        double best_index = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < k; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const double ucb = state.stats.mean(i) + conf_width(model.sigma[idx],
                                                                state.stats.pulls[idx],
                                                                delta, k);
            if (ucb > best_index) {
                best_index = ucb;
                leader = i;
            }
        }
        state.leader_rounds[static_cast<std::size_t>(leader)] += 1;
        int arm = leader;
        const bool leader_behind =
            static_cast<double>(state.stats.pulls[static_cast<std::size_t>(leader)]) <
            state.beta *
                static_cast<double>(state.leader_rounds[static_cast<std::size_t>(leader)]);
        if (!leader_behind) {
            const double ml = state.stats.mean(leader);
            const double nl =
                static_cast<double>(state.stats.pulls[static_cast<std::size_t>(leader)]);
            double best_cost = std::numeric_limits<double>::infinity();
            for (int i = 0; i < k; ++i) {
                if (i == leader) continue;
                const double ni =
                    static_cast<double>(state.stats.pulls[static_cast<std::size_t>(i)]);
                const double cost =
                    (ml - state.stats.mean(i)) / std::sqrt(1.0 / nl + 1.0 / ni);
                if (cost < best_cost) {
                    best_cost = cost;
                    arm = i;
                }
            }
        }
        record_pull(state.stats, arm, sample_reward(model, arm, reward_rng));
    }
}

}  // namespace bai
