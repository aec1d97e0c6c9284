#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

// Adaptive Gauss-Kronrod quadrature on a finite interval.
//
// A 7-point Gauss rule is embedded in a 15-point Kronrod extension; the
// difference between the two estimates drives interval subdivision. Intervals
// whose error estimate exceeds their share of the tolerance are split in half
// and pushed back on a work stack. Integrands here are products of Gaussian
// densities and CDFs, which are analytic, so convergence is fast and the
// default tolerances (1e-12 absolute, 1e-9 relative) are reached after a
// handful of splits.

namespace bai {

namespace gk {

// Nodes and weights of the 15-point Kronrod rule on [-1, 1]; the embedded
// 7-point Gauss rule uses the odd-indexed nodes.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// One G7/K15 evaluation; returns {kronrod_estimate, |kronrod - gauss|}.
template <class F>
std::pair<double, double> eval(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double gauss = wg[3] * fc;
    double kronrod = wgk[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * xgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        kronrod += wgk[i] * fsum;
        if (i % 2 == 1) gauss += wg[i / 2] * fsum;
    }
    return {kronrod * h, std::fabs((kronrod - gauss) * h)};
}

}  // namespace gk

// Integrates f over [a, b] by adaptive bisection of the G7K15 rule. The
// initial uniform panels protect the error estimator from features much
// narrower than the domain: a spike between every node of a single panel
// reports zero error and would be accepted as zero. Callers integrating
// against densities of width w should pass roughly (b - a) / w panels.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-12,
                 double rel_tol = 1e-9, int initial_panels = 16) {
    struct Interval {
        double a, b, value, error;
    };
    std::vector<Interval> work;
    work.reserve(static_cast<std::size_t>(initial_panels));
    double total = 0.0;
    double total_err = 0.0;
    const double step = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double lo = a + step * i;
        const double hi = i + 1 == initial_panels ? b : a + step * (i + 1);
        const auto est = gk::eval(f, lo, hi);
        work.push_back({lo, hi, est.first, est.second});
        total += est.first;
        total_err += est.second;
    }
    double result = 0.0;
    // Generous cap; analytic integrands never get close to it. A pathological
    // integrand falls through with the best estimates accumulated so far.
    for (int splits = 0; splits < 4000 && !work.empty(); ++splits) {
        const double tol = std::max(abs_tol, rel_tol * std::fabs(total));
        // Pop the worst interval first.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < work.size(); ++i)
            if (work[i].error > work[worst].error) worst = i;
        Interval iv = work[worst];
        work[worst] = work.back();
        work.pop_back();
        if (total_err <= tol || iv.b - iv.a <= 1e-300) {
            result += iv.value;
            for (const auto& w : work) result += w.value;
            return result;
        }
        const double mid = 0.5 * (iv.a + iv.b);
        auto left = gk::eval(f, iv.a, mid);
        auto right = gk::eval(f, mid, iv.b);
        total += left.first + right.first - iv.value;
        total_err += left.second + right.second - iv.error;
        work.push_back({iv.a, mid, left.first, left.second});
        work.push_back({mid, iv.b, right.first, right.second});
    }
    for (const auto& w : work) result += w.value;
    return result;
}

}  // namespace bai
