#include "bai/prior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bai/bandit.hpp"
#include "bai/gaussian.hpp"
#include "bai/quadrature.hpp"

namespace bai {

void Prior::validate() const {
    if (arms.size() < 2) throw std::invalid_argument("prior needs at least two arms");
    for (const ArmPrior& a : arms) {
        if (!std::isfinite(a.m) || !std::isfinite(a.xi) || !std::isfinite(a.sigma))
            throw std::invalid_argument("prior fields must be finite");
        if (a.xi <= 0.0 || a.sigma <= 0.0)
            throw std::invalid_argument("prior xi and sigma must be positive");
    }
}

double prior_pdf(const ArmPrior& p, double x) { return norm_pdf(x, p.m, p.xi); }

double prior_cdf(const ArmPrior& p, double x) { return norm_cdf(x, p.m, p.xi); }

BanditModel sample_model(const Prior& prior, Rng& rng) {
    BanditModel model;
    model.mu.reserve(prior.arms.size());
    model.sigma.reserve(prior.arms.size());
    for (const ArmPrior& a : prior.arms) {
        model.mu.push_back(a.m + a.xi * rng.normal());
        model.sigma.push_back(a.sigma);
    }
    return model;
}

namespace {

void check_pair(const Prior& prior, int i, int j) {
    const int k = prior.k();
    if (i < 0 || i >= k || j < 0 || j >= k)
        throw std::invalid_argument("arm index out of range");
    if (i == j) throw std::invalid_argument("l_ij needs two distinct arms");
}

// Domain covering all prior mass to far below the quadrature tolerance.
std::pair<double, double> integration_domain(const Prior& prior) {
    double lo = prior.arms[0].m - 10.0 * prior.arms[0].xi;
    double hi = prior.arms[0].m + 10.0 * prior.arms[0].xi;
    for (const ArmPrior& a : prior.arms) {
        lo = std::min(lo, a.m - 10.0 * a.xi);
        hi = std::max(hi, a.m + 10.0 * a.xi);
    }
    return {lo, hi};
}

}  // namespace

double l_ij(const Prior& prior, int i, int j) {
    prior.validate();
    check_pair(prior, i, j);
    const auto [lo, hi] = integration_domain(prior);
    const auto integrand = [&](double x) {
        double v = prior_pdf(prior.arms[i], x) * prior_pdf(prior.arms[j], x);
        for (int s = 0; s < prior.k(); ++s)
            if (s != i && s != j) v *= prior_cdf(prior.arms[s], x);
        return v;
    };
    // The density product concentrates at width ~min(xi_i, xi_j); seed enough
    // panels that the narrowest such bump lands on quadrature nodes even when
    // another arm's wide prior sets the domain.
    const double narrow = std::min(prior.arms[i].xi, prior.arms[j].xi);
    const int panels = static_cast<int>(
        std::clamp(std::ceil((hi - lo) / narrow), 16.0, 1024.0));
    return integrate(integrand, lo, hi, 1e-12, 1e-9, panels);
}

double l_total(const Prior& prior) {
    prior.validate();
    double sum = 0.0;
    for (int i = 0; i < prior.k(); ++i)
        for (int j = 0; j < prior.k(); ++j)
            if (i != j) sum += l_ij(prior, i, j);
    return sum;
}

namespace {

LDeltaEstimate mc_band_probability(const Prior& prior, double delta_gap,
                                   std::int64_t n_samples, Rng& rng, int want_i,
                                   int want_j) {
    if (delta_gap <= 0.0) throw std::invalid_argument("delta_gap must be positive");
    if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        const BanditModel model = sample_model(prior, rng);
        const auto [best, second] = best_and_second(model.mu);
        if (want_i >= 0 && (best != want_i || second != want_j)) continue;
        if (model.mu[best] - model.mu[second] <= delta_gap) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    return {p / delta_gap, se / delta_gap};
}

}  // namespace

LDeltaEstimate l_delta(const Prior& prior, double delta_gap, std::int64_t n_samples,
                       Rng& rng) {
    prior.validate();
    return mc_band_probability(prior, delta_gap, n_samples, rng, -1, -1);
}

LDeltaEstimate l_delta_pair(const Prior& prior, int i, int j, double delta_gap,
                            std::int64_t n_samples, Rng& rng) {
    prior.validate();
    check_pair(prior, i, j);
    return mc_band_probability(prior, delta_gap, n_samples, rng, i, j);
}

double delta0(const Prior& prior, double delta) {
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("delta must be in (0, 1)");
    const double l = l_total(prior);
    if (l <= 0.0)
        throw std::domain_error(
            "L(H) underflowed to zero: prior supports do not overlap");
    return delta / (4.0 * l);
}

double delta0_implicit(const Prior& prior, double delta, std::int64_t n_samples,
                       Rng& rng) {
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("delta must be in (0, 1)");
    if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
    prior.validate();
    // L(H, Delta) * Delta = P[gap <= Delta] is nondecreasing in Delta, so the
    // largest admissible Delta is the delta/2 quantile of the sampled gaps.
    std::vector<double> gaps;
    gaps.reserve(static_cast<std::size_t>(n_samples));
    for (std::int64_t s = 0; s < n_samples; ++s) {
        const BanditModel model = sample_model(prior, rng);
        const auto [best, second] = best_and_second(model.mu);
        gaps.push_back(model.mu[best] - model.mu[second]);
    }
    std::sort(gaps.begin(), gaps.end());
    // Largest m with m/n <= delta/2; m == 0 means no admissible sampled gap.
    const auto m = static_cast<std::int64_t>(
        std::floor(static_cast<double>(n_samples) * delta / 2.0));
    if (m < 1) return 0.0;
    return gaps[static_cast<std::size_t>(m - 1)];
}

}  // namespace bai
