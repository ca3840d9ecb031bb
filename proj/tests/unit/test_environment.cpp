#include <gtest/gtest.h>

#include <cmath>

#include "sege/environment.hpp"
#include "sege/random.hpp"

using namespace sege;

namespace {

Vector vec(double a, double b) { return (Vector(2) << a, b).finished(); }

EnvironmentSpec disk(double sigma = 1.0) {
    return EnvironmentSpec{vec(0.6, 0.8), 1.0, sigma, EllipsoidArmSet::ball(vec(1, 1), 1.0), vec(1.2, 1.9), 2.24,
                           0.8 * 2.24};
}

}  // namespace

TEST(Environment, NoiselessRewards) {
    const Environment env(disk(0.0));
    Rng rng(1);
    EXPECT_NEAR(env.sample_reward(vec(1.2, 1.9), rng), 2.24, 1e-15);
    EXPECT_NEAR(env.sample_reward(vec(1.6, 1.8), rng), 2.40, 1e-15);
    EXPECT_EQ(env.sample_reward(vec(1.0, 1.5), rng), env.expected_reward(vec(1.0, 1.5)));
}

TEST(Environment, ExpectedReward) {
    const Environment env(disk());
    EXPECT_NEAR(env.expected_reward(vec(1.2, 1.9)), 2.24, 1e-15);
    EXPECT_EQ(env.expected_reward(vec(0, 0)), 0.0);
    EXPECT_NEAR(env.expected_reward(vec(1, 1)), 1.4, 1e-15);
    EXPECT_THROW((void)env.expected_reward(Vector::Ones(3)), std::invalid_argument);
}

TEST(Environment, OptimalArm) {
    const Environment env(disk());
    EXPECT_LT((env.optimal_arm() - vec(1.6, 1.8)).norm(), 1e-15);
    EXPECT_NEAR(env.optimal_reward(), 2.4, 1e-15);
}

TEST(Environment, NoiseMomentsMatchNormal) {
    const Environment env(disk(1.0));
    Rng rng = make_stream(42, 0, "noise");
    const Vector x = vec(1.5, 1.5);
    const double mean = env.expected_reward(x);
    constexpr int kDraws = 1000000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        const double y = env.sample_reward(x, rng) - mean;
        sum += y;
        sq += y * y;
    }
    EXPECT_NEAR(sum / kDraws, 0.0, 0.005);
    const double var = sq / kDraws - (sum / kDraws) * (sum / kDraws);
    EXPECT_NEAR(var, 1.0, 0.03);
}

TEST(Environment, VarianceScalesWithSigma) {
    const Environment env(disk(0.3));
    Rng rng = make_stream(43, 0, "noise");
    double sq = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double e = env.sample_reward(vec(1, 1), rng) - 1.4;
        sq += e * e;
    }
    EXPECT_NEAR(sq / 100000 / 0.09, 1.0, 0.03);
}

TEST(Environment, RejectsInfeasibleArm) {
    const Environment env(disk());
    Rng rng(1);
    EXPECT_THROW((void)env.sample_reward(vec(2.1, 1), rng), std::invalid_argument);
}

TEST(Environment, WorstCaseBaselineBound) {
    EXPECT_NEAR(worst_case_baseline_bound(vec(1.2, 1.9), 1.0), -std::sqrt(5.05), 1e-15);
    EXPECT_NEAR(worst_case_baseline_bound(vec(1.2, 1.9), 1.0), -2.247221, 1e-6);
    EXPECT_EQ(worst_case_baseline_bound(vec(0, 0), 5.0), 0.0);
    EXPECT_EQ(worst_case_baseline_bound(vec(3, 4), 2.0), -10.0);
}

TEST(Environment, RejectsEachBrokenInvariant) {
    auto spec = disk();
    spec.theta_star = vec(0.9, 0.8);  // ||theta*|| > S
    EXPECT_THROW(Environment{spec}, std::invalid_argument);

    spec = disk();
    spec.baseline_arm = vec(2.5, 1.0);  // outside the disk
    EXPECT_THROW(Environment{spec}, std::invalid_argument);

    spec = disk();
    spec.baseline_bound = 2.25;  // above <X0, theta*>
    EXPECT_THROW(Environment{spec}, std::invalid_argument);

    spec = disk();
    spec.threshold = 2.24;  // b = b0
    try {
        Environment env(spec);
        FAIL() << "b = b0 accepted";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("b >= b0"), std::string::npos);
    }

    spec = disk();
    spec.theta_bound = 0.0;
    EXPECT_THROW(Environment{spec}, std::invalid_argument);

    spec = disk();
    spec.noise_sd = -1.0;
    EXPECT_THROW(Environment{spec}, std::invalid_argument);
}

TEST(RandomStreams, NamedStreamsAreIndependentAndReproducible) {
    Rng a = make_stream(7, 3, "noise");
    Rng b = make_stream(7, 3, "noise");
    Rng c = make_stream(7, 3, "exploration");
    Rng d = make_stream(7, 4, "noise");
    const auto va = a();
    EXPECT_EQ(va, b());
    EXPECT_NE(va, c());
    EXPECT_NE(va, d());
}
