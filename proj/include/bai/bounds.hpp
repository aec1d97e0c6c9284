#pragma once

#include <cstdint>
#include <vector>

#include "bai/prior.hpp"
#include "bai/rng.hpp"

// Closed-form budgets and thresholds.
//
// Upper-bound side, with B = 320 max_i sigma_i^2:
//   Delta_thr = min(log(4 sqrt(k) / (delta pi)), 1/B)
//   R0(Delta) = B log(min(Delta, Delta_thr)^-1) / min(Delta, Delta_thr)^2
//   T0        = k * ceil(R0(Delta_0))          (hard cap on elimination pulls)
//   B0        = (pi^2/3 + 1) B
//
// Lower-bound side:
//   N_V = L(H)^2 sigma_min^2 ln 2 / (16 e^4 delta)   (sample floor: any policy
//         with expected stopping time below N_V errs with probability >= delta)
//   delta_L = (L/(32 e^4)) min(D0, D1, min_i 1/(4 m_i^2), L/(4(k-1) sum 1/xi_i))
//
// The source defines sigma_min as "min_i sigma_i^2" yet squares it again inside
// N_V; both readings are exposed and coincide at sigma = 1. D0 uses the
// principal Lambert W branch, which is negative for its stated argument
// whenever the case split selects it; the literal value is returned together
// with a sign flag rather than guessing the intended expression.

namespace bai {

enum class SigmaMinReading {
    StdDev,    // sigma_min^2 = (min_i sigma_i)^2
    Variance,  // sigma_min^2 = (min_i sigma_i^2)^2
};

double n_v(const Prior& prior, double delta,
           SigmaMinReading reading = SigmaMinReading::StdDev);

struct BudgetReport {
    double b = 0.0;
    double b0 = 0.0;
    double delta_thr = 0.0;
    std::int64_t r0_of_delta0 = 0;  // ceil(R0(Delta_0))
    std::int64_t t0 = 0;            // k * r0_of_delta0
    double n_v = 0.0;               // default sigma_min reading
    double delta_l = 0.0;
    double d0 = 0.0;
    double d1 = 0.0;
    bool d0_nonpositive = false;    // literal D0 came out <= 0 (see header note)
    double delta0 = 0.0;            // the threshold the budget is evaluated at
    int k = 0;
};

// R0(Delta) as a real number, before the ceiling.
double r0_real(const Prior& prior, double gap, double delta);

BudgetReport upper_budget(const Prior& prior, double delta);

struct SmallDeltaThresholds {
    double delta_l;
    double d0;
    double d1;
    bool d0_nonpositive;
};

SmallDeltaThresholds small_delta_thresholds(const Prior& prior);

// Principal branch of w e^w = y via Halley iteration, 1e-12 relative
// round-trip. Throws std::domain_error for y < -1/e.
double lambert_w0(double y);

// Numerical check of the Jensen-optimal allocation on a discretized two-arm
// near-tie band. The band {|mu1 - mu2| < gap} intersected with [-6 xi, 6 xi]^2
// is cut into `cells` strips along mu1; cell weights come from quadrature. The
// objective sum_c w_c exp(-n_c gap^2 / (2 sigma_min^2)) is evaluated at the
// uniform allocation n_c = budget / sum(w) and at `trials` random feasible
// allocations (exponential weights scaled to the same budget); by convexity
// the uniform allocation must win.
struct Opt3Report {
    double delta = 0.0;        // confidence level the instance is built from
    double gap = 0.0;          // band half-width, 8 delta / L(H)
    double budget = 0.0;       // total allocation mass (N_V by default)
    int cells = 0;
    int trials = 0;
    double uniform_value = 0.0;
    double best_sampled_value = 0.0;
    double worst_sampled_value = 0.0;
    bool uniform_optimal = false;  // uniform_value <= every sampled value
};

// Requires a two-arm prior. gap and budget are passed explicitly so the
// zero-budget and scaled-budget behaviors stay testable.
Opt3Report verify_opt3(const Prior& prior, double delta, double gap, double budget,
                       int cells, int trials, Rng& rng);

}  // namespace bai
