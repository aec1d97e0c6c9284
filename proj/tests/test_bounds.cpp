#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <stdexcept>

#include "bai/bounds.hpp"
#include "bai/rng.hpp"

using namespace bai;

namespace {

Prior standard(int k) {
    Prior p;
    for (int i = 0; i < k; ++i) p.arms.push_back({0.0, 1.0, 1.0});
    return p;
}

}  // namespace

TEST_CASE("principal lambert branch: reference points") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lambert_w0(-std::exp(-1.0)) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(lambert_w0(-1.0 / 32.0) ==
          doctest::Approx(-0.03227504800772421).epsilon(1e-13));
    CHECK(lambert_w0(-0.1) == doctest::Approx(-0.11183255915896296).epsilon(1e-13));
    CHECK_THROWS_AS(lambert_w0(-0.4), std::domain_error);
}

TEST_CASE("principal lambert branch: round trip and boost agreement") {
    const double grid[] = {-0.3678, -0.36, -0.2, -0.05, -1e-6, 1e-6,
                           0.1,     1.0,   2.0,  10.0,  1e3,   1e8};
    for (const double y : grid) {
        const double w = lambert_w0(y);
        CHECK(std::fabs(w * std::exp(w) - y) <= 1e-12 * std::fabs(y));
        const double oracle = boost::math::lambert_w0(y);
        CHECK(w == doctest::Approx(oracle).epsilon(1e-11));
    }
}

TEST_CASE("verification floor: reference value and the reading switch") {
    const Prior p2 = standard(2);
    CHECK(n_v(p2, 0.1) == doctest::Approx(0.002525676236496944).epsilon(1e-12));
    CHECK(n_v(p2, 0.1, SigmaMinReading::Variance) ==
          doctest::Approx(0.002525676236496944).epsilon(1e-12));  // sigma = 1: readings agree

    Prior wide = p2;
    wide.arms[0].sigma = wide.arms[1].sigma = 2.0;
    // sd reading squares the smallest sd; variance reading squares the
    // smallest variance, i.e. fourth power of the sd.
    CHECK(n_v(wide, 0.1, SigmaMinReading::Variance) ==
          doctest::Approx(4.0 * n_v(wide, 0.1, SigmaMinReading::StdDev)).epsilon(1e-12));
    CHECK(n_v(wide, 0.1, SigmaMinReading::StdDev) ==
          doctest::Approx(4.0 * 0.002525676236496944).epsilon(1e-12));

    CHECK_THROWS_AS(n_v(p2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(n_v(p2, 1.0), std::invalid_argument);
}

TEST_CASE("round budget: reference values for the two-arm experiment") {
    const BudgetReport r = upper_budget(standard(2), 0.1);
    CHECK(r.k == 2);
    CHECK(r.b == doctest::Approx(320.0).epsilon(1e-15));
    CHECK(r.b0 == doctest::Approx(1372.757802782865).epsilon(1e-13));
    CHECK(r.delta_thr == doctest::Approx(0.003125).epsilon(1e-15));
    CHECK(r.delta0 == doctest::Approx(0.04431134627263790).epsilon(1e-12));
    CHECK(r.r0_of_delta0 == 189016343);
    CHECK(r.t0 == 378032686);
    CHECK(r.n_v == doctest::Approx(0.002525676236496944).epsilon(1e-12));
}

TEST_CASE("round budget: ten arms at one percent risk") {
    const BudgetReport r = upper_budget(standard(10), 0.01);
    CHECK(r.delta_thr == doctest::Approx(0.003125).epsilon(1e-15));
    CHECK(r.r0_of_delta0 == 778587575);
    CHECK(r.t0 == 7785875750);
}

TEST_CASE("round budget is flat above the gap threshold and grows below it") {
    const Prior p = standard(2);
    const double at_thr = r0_real(p, 0.003125, 0.1);
    CHECK(r0_real(p, 0.01, 0.1) == doctest::Approx(at_thr).epsilon(1e-15));
    CHECK(r0_real(p, 0.5, 0.1) == doctest::Approx(at_thr).epsilon(1e-15));
    CHECK(r0_real(p, 0.001, 0.1) > at_thr);
    CHECK(r0_real(p, 0.0001, 0.1) > r0_real(p, 0.001, 0.1));
}

TEST_CASE("small-delta thresholds on the standard prior go negative and say so") {
    const SmallDeltaThresholds th = small_delta_thresholds(standard(2));
    CHECK(th.d0 == doctest::Approx(-0.03227504800772421).epsilon(1e-12));
    CHECK(th.d1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(th.d0_nonpositive);
    CHECK(th.delta_l == doctest::Approx(-1.0422311632472721e-05).epsilon(1e-11));
}

TEST_CASE("small-delta thresholds with narrow priors stay positive") {
    Prior narrow = standard(2);
    narrow.arms[0].xi = narrow.arms[1].xi = 0.1;
    const SmallDeltaThresholds th = small_delta_thresholds(narrow);
    CHECK(th.d0 == 1.0);  // below the case-split width the lambert term is off
    CHECK(!th.d0_nonpositive);
    CHECK(th.delta_l == doctest::Approx(2.2773628633032762e-4).epsilon(1e-11));
}

TEST_CASE("uniform allocation minimizes the near-tie objective") {
    const Prior p = standard(2);
    const double delta = 0.05;
    const double gap = 8.0 * delta / l_total(p);
    CHECK(gap == doctest::Approx(0.7089815403622064).epsilon(1e-12));
    const double budget = n_v(p, delta);
    CHECK(budget == doctest::Approx(0.005051352472993888).epsilon(1e-12));

    Rng rng(1);
    const Opt3Report r = verify_opt3(p, delta, gap, budget, 40, 200, rng);
    CHECK(r.uniform_value == doctest::Approx(0.3825906009978411).epsilon(1e-9));
    CHECK(r.uniform_optimal);
    CHECK(r.best_sampled_value >= r.uniform_value);
    CHECK(r.worst_sampled_value >= r.best_sampled_value);
}

TEST_CASE("zero budget flattens the objective to the band weight") {
    const Prior p = standard(2);
    Rng rng(2);
    const Opt3Report r =
        verify_opt3(p, 0.05, 0.7089815403622064, 0.0, 40, 50, rng);
    CHECK(r.uniform_value == doctest::Approx(0.3838580472597073).epsilon(1e-9));
    CHECK(r.best_sampled_value == doctest::Approx(r.uniform_value).epsilon(1e-14));
    CHECK(r.worst_sampled_value == doctest::Approx(r.uniform_value).epsilon(1e-14));
    CHECK(r.uniform_optimal);
}

TEST_CASE("doubling the budget strictly improves the uniform objective") {
    const Prior p = standard(2);
    const double gap = 0.7089815403622064;
    Rng r1(3), r2(3);
    const Opt3Report lo = verify_opt3(p, 0.05, gap, 0.005, 40, 0, r1);
    const Opt3Report hi = verify_opt3(p, 0.05, gap, 0.010, 40, 0, r2);
    CHECK(hi.uniform_value < lo.uniform_value);
}

TEST_CASE("allocation check rejects bad arguments") {
    const Prior p = standard(2);
    Rng rng(4);
    CHECK_THROWS_AS(verify_opt3(standard(3), 0.05, 0.7, 0.005, 40, 10, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_opt3(p, 0.05, 0.0, 0.005, 40, 10, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_opt3(p, 0.05, 0.7, 0.005, 0, 10, rng),
                    std::invalid_argument);
}
