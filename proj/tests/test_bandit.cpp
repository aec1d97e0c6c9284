#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bai/bandit.hpp"
#include "bai/rng.hpp"

using namespace bai;

TEST_CASE("gaussian divergence is the scaled squared gap") {
    CHECK(kl_gaussian(1.0, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(kl_gaussian(0.3, -0.7, 2.0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(kl_gaussian(5.0, 5.0, 0.1) == 0.0);
    CHECK_THROWS_AS(kl_gaussian(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("bernoulli divergence: reference values and edge conventions") {
    CHECK(kl_bernoulli(0.25, 0.75) == doctest::Approx(0.5493061443340548).epsilon(1e-14));
    CHECK(kl_bernoulli(0.0, 0.5) == doctest::Approx(0.6931471805599453).epsilon(1e-14));
    CHECK(kl_bernoulli(1.0, 0.5) == doctest::Approx(0.6931471805599453).epsilon(1e-14));
    CHECK(kl_bernoulli(0.5, 0.5) == 0.0);
    CHECK_THROWS_AS(kl_bernoulli(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(kl_bernoulli(0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(kl_bernoulli(-0.1, 0.5), std::invalid_argument);
}

TEST_CASE("bernoulli divergence dominates twice the squared gap") {
    // Pinsker's inequality over a grid; equality only at a == b.
    for (int ai = 0; ai <= 10; ++ai) {
        for (int bi = 1; bi < 10; ++bi) {
            const double a = ai / 10.0;
            const double b = bi / 10.0;
            CHECK(kl_bernoulli(a, b) >= 2.0 * (a - b) * (a - b) - 1e-15);
        }
    }
}

TEST_CASE("pull accounting preserves the clock identity") {
    HistoryStats stats(3);
    CHECK(stats.clock == 1);
    Rng rng(8);
    BanditModel model{{0.5, 0.0, -0.5}, {1.0, 1.0, 1.0}};
    std::int64_t total = 0;
    for (int step = 0; step < 200; ++step) {
        const int arm = static_cast<int>(rng.below(3));
        record_pull(stats, arm, sample_reward(model, arm, rng));
        ++total;
        CHECK(stats.clock == total + 1);
    }
    CHECK(stats.pulls[0] + stats.pulls[1] + stats.pulls[2] == total);
}

TEST_CASE("empirical means track sums over counts") {
    HistoryStats stats(2);
    record_pull(stats, 0, 2.0);
    record_pull(stats, 0, 4.0);
    record_pull(stats, 1, -1.0);
    CHECK(stats.mean(0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(stats.mean(1) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("reward sampling uses the arm's own parameters") {
    BanditModel model{{2.0, -3.0}, {0.5, 4.0}};
    Rng rng(15);
    CHECK_THROWS_AS(sample_reward(model, 2, rng), std::out_of_range);
    CHECK_THROWS_AS(sample_reward(model, -1, rng), std::out_of_range);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_reward(model, 1, rng);
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sumsq / n - mean * mean);
    CHECK(std::fabs(mean + 3.0) < 4.0 * 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(sd - 4.0) < 0.1);
}

TEST_CASE("best and second with ties broken by lowest index") {
    CHECK(best_and_second({1.0, 2.0, 0.5}) == std::pair<int, int>{1, 0});
    CHECK(best_and_second({3.0, 3.0, 1.0}) == std::pair<int, int>{0, 1});
    CHECK(best_and_second({1.0, 2.0, 2.0, 0.0}) == std::pair<int, int>{1, 2});
    CHECK(best_and_second({-1.0, -2.0}) == std::pair<int, int>{0, 1});
}

TEST_CASE("stop reasons have stable names") {
    CHECK(std::string(to_string(StopReason::SingleSurvivor)) == "SingleSurvivor");
    CHECK(std::string(to_string(StopReason::EarlyStop)) == "EarlyStop");
    CHECK(std::string(to_string(StopReason::BaselineThreshold)) == "BaselineThreshold");
    CHECK(std::string(to_string(StopReason::Truncated)) == "Truncated");
}
