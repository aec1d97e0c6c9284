#include "bai/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bai/gaussian.hpp"
#include "bai/quadrature.hpp"

namespace bai {

namespace {

constexpr double kE4 = 54.598150033144236;  // e^4

double sigma_min_sq(const Prior& prior, SigmaMinReading reading) {
    double min_sd = prior.arms[0].sigma;
    for (const ArmPrior& a : prior.arms) min_sd = std::min(min_sd, a.sigma);
    const double base =
        reading == SigmaMinReading::StdDev ? min_sd * min_sd : min_sd * min_sd * min_sd * min_sd;
    return base;
}

double max_sigma_sq(const Prior& prior) {
    double m = 0.0;
    for (const ArmPrior& a : prior.arms) m = std::max(m, a.sigma * a.sigma);
    return m;
}

}  // namespace

double n_v(const Prior& prior, double delta, SigmaMinReading reading) {
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("n_v: delta must be in (0, 1)");
    prior.validate();
    const double l = l_total(prior);
    return l * l * sigma_min_sq(prior, reading) * std::numbers::ln2 / (16.0 * kE4 * delta);
}

double r0_real(const Prior& prior, double gap, double delta) {
    const double b = 320.0 * max_sigma_sq(prior);
    const double thr =
        std::min(std::log(4.0 * std::sqrt(static_cast<double>(prior.k())) /
                          (delta * std::numbers::pi)),
                 1.0 / b);
    const double d = std::min(gap, thr);
    return b * std::log(1.0 / d) / (d * d);
}

BudgetReport upper_budget(const Prior& prior, double delta) {
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("upper_budget: delta must be in (0, 1)");
    prior.validate();
    BudgetReport r;
    r.k = prior.k();
    r.b = 320.0 * max_sigma_sq(prior);
    r.b0 = (std::numbers::pi * std::numbers::pi / 3.0 + 1.0) * r.b;
    r.delta_thr = std::min(std::log(4.0 * std::sqrt(static_cast<double>(prior.k())) /
                                    (delta * std::numbers::pi)),
                           1.0 / r.b);
    r.delta0 = delta0(prior, delta);
    r.r0_of_delta0 = static_cast<std::int64_t>(std::ceil(r0_real(prior, r.delta0, delta)));
    r.t0 = static_cast<std::int64_t>(prior.k()) * r.r0_of_delta0;
    r.n_v = n_v(prior, delta);
    const SmallDeltaThresholds th = small_delta_thresholds(prior);
    r.delta_l = th.delta_l;
    r.d0 = th.d0;
    r.d1 = th.d1;
    r.d0_nonpositive = th.d0_nonpositive;
    return r;
}

SmallDeltaThresholds small_delta_thresholds(const Prior& prior) {
    prior.validate();
    const int k = prior.k();
    double max_xi = 0.0;
    for (const ArmPrior& a : prior.arms) max_xi = std::max(max_xi, a.xi);

    // Case split at (e^2 / 2^10)^(1/3); below it D0 is pinned to 1.
    const double xi_split = std::cbrt(std::exp(2.0) / 1024.0);
    double d0 = 1.0;
    if (max_xi > xi_split)
        d0 = lambert_w0(-1.0 / (32.0 * std::pow(max_xi, 1.5)));

    double d1 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const ArmPrior& ai = prior.arms[static_cast<std::size_t>(i)];
            const ArmPrior& aj = prior.arms[static_cast<std::size_t>(j)];
            const double drift =
                std::fabs(ai.m / (ai.sigma * ai.sigma) - aj.m / (aj.sigma * aj.sigma));
            // A zero drift difference makes its reciprocal +inf, which simply
            // drops out of the min (limit semantics of the bound).
            if (drift > 0.0) d1 = std::min(d1, 1.0 / drift);
            const double prec =
                1.0 / (2.0 * ai.sigma * ai.sigma) + 1.0 / (2.0 * aj.sigma * aj.sigma);
            d1 = std::min(d1, 1.0 / (prec * prec));
        }
    }

    double inner = std::min(d0, d1);
    for (const ArmPrior& a : prior.arms)
        if (a.m != 0.0) inner = std::min(inner, 1.0 / (4.0 * a.m * a.m));
    const double l = l_total(prior);
    double inv_xi_sum = 0.0;
    for (const ArmPrior& a : prior.arms) inv_xi_sum += 1.0 / a.xi;
    inner = std::min(inner, l / (4.0 * static_cast<double>(k - 1) * inv_xi_sum));

    SmallDeltaThresholds out;
    out.d0 = d0;
    out.d1 = d1;
    out.d0_nonpositive = d0 <= 0.0;
    out.delta_l = l / (32.0 * kE4) * inner;
    return out;
}

double lambert_w0(double y) {
    const double inv_e = std::exp(-1.0);
    if (y < -inv_e) throw std::domain_error("lambert_w0: y below -1/e");
    if (y == 0.0) return 0.0;
    if (y == -inv_e) return -1.0;

    // Seed: series around the branch point for y near -1/e, w ~ log(y) - log
    // log(y) for large y, w ~ y otherwise; Halley then converges cubically.
    double w;
    if (y < -0.25) {
        const double p = std::sqrt(2.0 * (std::numbers::e * y + 1.0));
        w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
    } else if (y > std::numbers::e) {
        const double ly = std::log(y);
        w = ly - std::log(ly);
    } else {
        w = y / (1.0 + y);
    }

    for (int iter = 0; iter < 64; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - y;
        if (std::fabs(f) <= 1e-14 * std::fabs(y)) break;
        const double wp1 = w + 1.0;
        w -= f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    }
    return w;
}

Opt3Report verify_opt3(const Prior& prior, double delta, double gap, double budget,
                       int cells, int trials, Rng& rng) {
    prior.validate();
    if (prior.k() != 2)
        throw std::invalid_argument("verify_opt3: needs a two-arm instance");
    if (gap <= 0.0) throw std::invalid_argument("verify_opt3: gap must be positive");
    if (cells < 1 || trials < 0)
        throw std::invalid_argument("verify_opt3: bad grid or trial count");

    const ArmPrior& a0 = prior.arms[0];
    const ArmPrior& a1 = prior.arms[1];
    const double box = 6.0 * std::max(a0.xi, a1.xi);

    // Strip c covers mu1 in [x_c, x_{c+1}]; its weight is the prior mass of
    // {(mu1, mu2): mu1 in strip, |mu1 - mu2| < gap, |mu2| <= box}.
    std::vector<double> w(static_cast<std::size_t>(cells), 0.0);
    const double width = 2.0 * box / static_cast<double>(cells);
    for (int c = 0; c < cells; ++c) {
        const double lo = -box + width * static_cast<double>(c);
        const double hi = lo + width;
        w[static_cast<std::size_t>(c)] = integrate(
            [&](double x) {
                const double upper = norm_cdf(std::min(x + gap, box), a1.m, a1.xi);
                const double lower = norm_cdf(std::max(x - gap, -box), a1.m, a1.xi);
                return norm_pdf(x, a0.m, a0.xi) * (upper - lower);
            },
            lo, hi);
    }
    double total_w = 0.0;
    for (double v : w) total_w += v;

    double min_sigma = std::min(a0.sigma, a1.sigma);
    const double alpha = gap * gap / (2.0 * min_sigma * min_sigma);
    const auto objective = [&](const std::vector<double>& n) {
        double v = 0.0;
        for (int c = 0; c < cells; ++c)
            v += w[static_cast<std::size_t>(c)] *
                 std::exp(-alpha * n[static_cast<std::size_t>(c)]);
        return v;
    };

    std::vector<double> alloc(static_cast<std::size_t>(cells), budget / total_w);
    Opt3Report report;
    report.delta = delta;
    report.gap = gap;
    report.budget = budget;
    report.cells = cells;
    report.trials = trials;
    report.uniform_value = objective(alloc);
    report.best_sampled_value = std::numeric_limits<double>::infinity();
    report.worst_sampled_value = -std::numeric_limits<double>::infinity();
    report.uniform_optimal = true;

    std::vector<double> g(static_cast<std::size_t>(cells));
    for (int trial = 0; trial < trials; ++trial) {
        // Exponential weights scaled so sum_c w_c n_c equals the budget.
        double denom = 0.0;
        for (int c = 0; c < cells; ++c) {
            g[static_cast<std::size_t>(c)] = -std::log(1.0 - rng.u01());
            denom += w[static_cast<std::size_t>(c)] * g[static_cast<std::size_t>(c)];
        }
        for (int c = 0; c < cells; ++c)
            alloc[static_cast<std::size_t>(c)] =
                budget * g[static_cast<std::size_t>(c)] / denom;
        const double v = objective(alloc);
        report.best_sampled_value = std::min(report.best_sampled_value, v);
        report.worst_sampled_value = std::max(report.worst_sampled_value, v);
        if (v < report.uniform_value) report.uniform_optimal = false;
    }
    if (trials == 0) {
        report.best_sampled_value = report.uniform_value;
        report.worst_sampled_value = report.uniform_value;
    }
    return report;
}

}  // namespace bai
