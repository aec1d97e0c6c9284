#include "bai/bandit.hpp"

#include <cmath>
#include <stdexcept>

namespace bai {

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::SingleSurvivor: return "SingleSurvivor";
        case StopReason::EarlyStop: return "EarlyStop";
        case StopReason::BaselineThreshold: return "BaselineThreshold";
        case StopReason::Truncated: return "Truncated";
    }
    return "unknown";
}

double kl_gaussian(double a, double b, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("kl_gaussian: sigma must be positive");
    const double d = a - b;
    return d * d / (2.0 * sigma * sigma);
}

double kl_bernoulli(double a, double b) {
    if (a < 0.0 || a > 1.0) throw std::invalid_argument("kl_bernoulli: a outside [0, 1]");
    if (b <= 0.0 || b >= 1.0)
        throw std::invalid_argument("kl_bernoulli: b outside (0, 1)");
    double v = 0.0;
    if (a > 0.0) v += a * std::log(a / b);
    if (a < 1.0) v += (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
    return v;
}

double sample_reward(const BanditModel& model, int arm, Rng& rng) {
    if (arm < 0 || arm >= model.k()) throw std::out_of_range("sample_reward: bad arm");
    const auto i = static_cast<std::size_t>(arm);
    return model.mu[i] + model.sigma[i] * rng.normal();
}

void record_pull(HistoryStats& stats, int arm, double reward) {
    const auto i = static_cast<std::size_t>(arm);
    stats.pulls[i] += 1;
    stats.sums[i] += reward;
    stats.clock += 1;
}

std::pair<int, int> best_and_second(const std::vector<double>& mu) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(mu.size()); ++i)
        if (mu[static_cast<std::size_t>(i)] > mu[static_cast<std::size_t>(best)]) best = i;
    int second = best == 0 ? 1 : 0;
    for (int i = 0; i < static_cast<int>(mu.size()); ++i) {
        if (i == best) continue;
        if (mu[static_cast<std::size_t>(i)] > mu[static_cast<std::size_t>(second)])
            second = i;
    }
    return {best, second};
}

}  // namespace bai
