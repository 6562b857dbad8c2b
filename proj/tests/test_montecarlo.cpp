#include "sumident/moments.hpp"
#include "sumident/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sumident;

namespace {

SampleSpec spec(Family family, std::vector<double> first, std::vector<double> second, std::size_t count,
                std::uint64_t seed) {
    SampleSpec s;
    s.family = family;
    s.first = std::move(first);
    s.second = std::move(second);
    s.sample_count = count;
    s.seed = seed;
    return s;
}

}  // namespace

TEST(Generator, SplitmixReference) {
    std::uint64_t state = 0;
    EXPECT_EQ(splitmix64(state), 0xe220a8397b1dcdafULL);
}

TEST(Generator, DeterministicAndJumpSeparates) {
    Xoshiro256 a(42), b(42), c(42);
    c.jump();
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        EXPECT_EQ(x, b.next());
        differs = differs || x != c.next();
    }
    EXPECT_TRUE(differs);
    Xoshiro256 u(7);
    for (int i = 0; i < 10000; ++i) {
        const double v = u.uniform01();
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 1.0);
        const double w = u.uniform_open0();
        EXPECT_GT(w, 0.0);
        EXPECT_LE(w, 1.0);
    }
}

TEST(Sampling, IdenticalStreamsForSameSeed) {
    const auto s = spec(Family::gamma, {1.5, 2.0}, {1.0, 0.5}, 70000, 99);
    EXPECT_EQ(sample_sum(s), sample_sum(s));
}

TEST(Sampling, UniformSupport) {
    const auto xs = sample_sum(spec(Family::uniform, {1.0}, {}, 100000, 5));
    ASSERT_EQ(xs.size(), 100000u);
    for (double x : xs) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
    }
}

TEST(Sampling, Validation) {
    EXPECT_THROW(spec(Family::exponential, {}, {}, 10, 1).validate(), std::invalid_argument);
    EXPECT_THROW(spec(Family::exponential, {-1.0}, {}, 10, 1).validate(), std::invalid_argument);
    EXPECT_THROW(spec(Family::gamma, {1.0}, {}, 10, 1).validate(), std::invalid_argument);
    EXPECT_THROW(spec(Family::uniform, {1.0}, {}, 0, 1).validate(), std::invalid_argument);
}

TEST(Estimate, ZerothMoment) {
    const auto e = estimate_moment(spec(Family::exponential, {1.0, 2.0}, {}, 5000, 1), 0);
    EXPECT_EQ(e.mean_of_powers, 1.0);
    EXPECT_EQ(e.std_error, 0.0);
    EXPECT_EQ(e.sample_count, 5000u);
}

TEST(Estimate, SerialAndParallelIdentical) {
    for (std::size_t count : {1000u, 65536u, 200001u}) {
        for (unsigned m : {1u, 3u}) {
            const auto s = spec(Family::gamma, {2.5, 1.0, 0.5}, {0.5, 2.0, 1.0}, count, 1234);
            EXPECT_EQ(estimate_moment(s, m), estimate_moment_serial(s, m));
            EXPECT_EQ(estimate_moment(s, m), estimate_moment(s, m));
        }
    }
}

TEST(Estimate, StandardErrorMatchesSampleDeviation) {
    const auto s = spec(Family::exponential, {1.0, 3.0}, {}, 20000, 17);
    const auto xs = sample_sum(s);
    double mean = 0.0;
    for (double x : xs) mean += x * x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x * x - mean) * (x * x - mean);
    const double se = std::sqrt(ss / static_cast<double>(xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
    const auto e = estimate_moment(s, 2);
    EXPECT_NEAR(e.mean_of_powers, mean, 1e-12 * mean);
    EXPECT_NEAR(e.std_error, se, 1e-9 * se);
}

TEST(Estimate, AnalyticMeans) {
    const auto exp_mean = estimate_moment(spec(Family::exponential, {1.0, 2.0}, {}, 1'000'000, 2024), 1);
    EXPECT_LE(std::abs(exp_mean.mean_of_powers - 1.5), 3 * exp_mean.std_error);

    const auto uni = estimate_moment(spec(Family::uniform, {1.0, 1.0}, {}, 1'000'000, 2025), 1);
    EXPECT_LE(std::abs(uni.mean_of_powers - 1.0), 4 * uni.std_error);

    // alpha=(1,1), beta=(1,2): E[S^2] = 3^2 + (1 + 4) = 14.
    const auto gam = estimate_moment(spec(Family::gamma, {1.0, 1.0}, {1.0, 2.0}, 1'000'000, 2026), 2);
    EXPECT_LE(std::abs(gam.mean_of_powers - 14.0), 4 * gam.std_error);
}

TEST(MonteCarloCheck, Contract) {
    MomentEstimate e{1, 2.0, 0.1, 1000};
    EXPECT_TRUE(mc_check(2.0, e, 5));
    EXPECT_FALSE(mc_check(2.0 + 10 * 0.1, e, 5));
    EXPECT_TRUE(mc_check(2.4, e, 5));
    MomentEstimate exact{0, 1.0, 0.0, 1000};
    EXPECT_TRUE(mc_check(1.0, exact, 5));
    EXPECT_FALSE(mc_check(1.0 + 1e-15, exact, 5));
}

// Each family, 100 seeded trials of 10^6 samples, moments 1..4: the analytic
// value must fall inside 5 standard errors in at least 95 trials.
TEST(MonteCarloConcordance, NinetyFivePercentOfTrials) {
    struct Case {
        SampleSpec spec;
        std::vector<double> analytic;
    };
    std::vector<Case> cases;
    auto add = [&](SampleSpec s, auto analytic_for) {
        std::vector<double> a;
        for (unsigned m = 1; m <= 4; ++m) a.push_back(analytic_for(m).to_double());
        cases.push_back({std::move(s), a});
    };
    add(spec(Family::exponential, {1.0, 2.0, 3.0}, {}, 1'000'000, 0),
        [](unsigned m) { return moment_by_expansion(RateParams({1, 2, 3}), m); });
    add(spec(Family::gamma, {2.5, 1.0}, {0.5, 2.0}, 1'000'000, 0), [](unsigned m) {
        return moment_by_expansion(GammaParams{{Rational(5, 2), Rational(1)}, {Rational(1, 2), Rational(2)}}, m);
    });
    add(spec(Family::uniform, {1.0, 2.0, 0.5}, {}, 1'000'000, 0),
        [](unsigned m) { return moment_by_expansion(UniformParams({1, 2, Rational(1, 2)}), m); });

    // One sample stream per trial serves all four orders.
    for (auto& c : cases) {
        std::vector<int> agreed(4, 0);
        for (std::uint64_t trial = 0; trial < 100; ++trial) {
            c.spec.seed = 1000 + trial;
            const auto xs = sample_sum(c.spec);
            for (unsigned m = 1; m <= 4; ++m) {
                double mean = 0.0;
                for (double x : xs) mean += std::pow(x, m);
                mean /= static_cast<double>(xs.size());
                double ss = 0.0;
                for (double x : xs) ss += (std::pow(x, m) - mean) * (std::pow(x, m) - mean);
                const double se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
                agreed[m - 1] += mc_check(c.analytic[m - 1], MomentEstimate{m, mean, se, xs.size()}, 5.0) ? 1 : 0;
            }
        }
        for (unsigned m = 1; m <= 4; ++m) EXPECT_GE(agreed[m - 1], 95) << to_string(c.spec.family) << " m=" << m;
    }
}
