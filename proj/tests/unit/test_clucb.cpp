#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "sege/clucb.hpp"
#include "support/fixtures.hpp"

using namespace sege;
using fixtures::vec;

namespace {

ProblemInstance disk_problem(double noise_sd = 1.0) { return fixtures::unit_disk(noise_sd).setup.env.public_view(); }

}  // namespace

TEST(Discretization, FourPointsOnTheDisk) {
    const auto disk = EllipsoidArmSet::ball(vec(1, 1), 1.0);
    const auto pts = discretize_boundary(disk, 4);
    ASSERT_EQ(pts.size(), 4u);
    const Vector expected[] = {vec(2, 1), vec(1, 2), vec(0, 1), vec(1, 0)};
    for (int k = 0; k < 4; ++k) EXPECT_LT((pts[k] - expected[k]).norm(), 1e-15) << k;
    EXPECT_THROW((void)discretize_boundary(disk, 2), std::invalid_argument);
    EXPECT_THROW((void)discretize_boundary(EllipsoidArmSet::ball(Vector::Ones(3), 1.0), 8), std::invalid_argument);
}

TEST(Discretization, GapBoundExamples) {
    const auto disk = EllipsoidArmSet::ball(vec(1, 1), 1.0);
    EXPECT_NEAR(discretization_gap_bound(disk, 1.0, 256), 1.0 - std::cos(std::numbers::pi / 256), 1e-18);
    EXPECT_NEAR(discretization_gap_bound(disk, 1.0, 256), 7.5e-5, 1e-6);
    EXPECT_NEAR(discretization_gap_bound(disk, 1.0, 3), 0.5, 1e-15);
}

TEST(Discretization, EmpiricalGapWithinBound) {
    const auto disk = EllipsoidArmSet::ball(vec(1, 1), 1.0);
    const Vector theta = vec(0.6, 0.8);
    const double best = ellipsoid_support(disk, theta).dot(theta);
    for (int k : {3, 4, 7, 16, 256}) {
        double found = -1e300;
        for (const auto& x : discretize_boundary(disk, k)) found = std::max(found, x.dot(theta));
        EXPECT_LE(best - found, discretization_gap_bound(disk, 1.0, k) + 1e-15) << k;
        EXPECT_GE(best - found, 0.0);
    }
}

TEST(UcbArm, Examples) {
    const Estimator est(2, 0.1);
    const std::vector<Vector> one{vec(1, 0)};
    const ScoredArm s = ucb_arm(est, one, 1.0);
    EXPECT_EQ(s.index, 0u);
    EXPECT_NEAR(s.value, std::sqrt(10.0), 1e-14);

    // Equal scores go to the lowest index.
    const std::vector<Vector> tie{vec(0, 1), vec(2, 1), vec(1, 2)};
    EXPECT_EQ(ucb_arm(est, tie, 1.0).index, 1u);
    EXPECT_THROW((void)ucb_arm(est, std::span<const Vector>{}, 1.0), std::invalid_argument);
}

TEST(ClucbPolicy, FirstStagePlaysBaseline) {
    ClucbPolicy policy(ClucbConfig{}, disk_problem());
    const ClucbDecision d = policy.decide();
    EXPECT_TRUE(d.played_baseline);
    EXPECT_EQ(d.arm, vec(1.2, 1.9));
    EXPECT_NEAR(d.delta, 0.6 / (std::numbers::pi * std::numbers::pi), 1e-16);
}

TEST(ClucbPolicy, BudgetCheckExamples) {
    const auto problem = disk_problem();
    ClucbPolicy policy(ClucbConfig{}, problem);
    // Empty history: lower bound is LCB(candidate) alone against 0.8 b0.
    EXPECT_FALSE(policy.budget_check(vec(1.6, 1.8), 1.0));
    // With zero radius LCB is <x, theta_hat> = 0 < 1.792.
    EXPECT_FALSE(policy.budget_check(vec(1.6, 1.8), 0.0));
    // Ten baseline plays bank 10 b0 = 22.4 against 0.8 * 11 * 2.24 = 19.712.
    for (int k = 0; k < 10; ++k) {
        ClucbDecision d;
        d.arm = problem.baseline_arm;
        d.played_baseline = true;
        policy.observe(d, 2.24);
    }
    EXPECT_EQ(policy.baseline_plays(), 10);
    EXPECT_TRUE(policy.budget_check(problem.baseline_arm, 0.0));
    EXPECT_FALSE(policy.budget_check(vec(0, 1), 1e6));
}

TEST(ClucbPolicy, BudgetCheckMonotoneInRadius) {
    const auto problem = disk_problem();
    ClucbPolicy policy(ClucbConfig{}, problem);
    Environment env = fixtures::unit_disk().setup.env;
    Rng noise(5);
    for (int t = 0; t < 300; ++t) {
        const ClucbDecision d = policy.decide();
        policy.observe(d, env.sample_reward(d.arm, noise));
    }
    for (const auto& x : policy.arms()) {
        bool prev = true;
        for (double r = 0.0; r < 20.0; r += 0.25) {
            const bool now = policy.budget_check(x, r);
            EXPECT_TRUE(prev || !now) << "passes at r = " << r << " after failing at a smaller radius";
            prev = now;
        }
    }
}

TEST(ClucbPolicy, LooserBudgetLeavesBaselineSooner) {
    const auto setup = fixtures::unit_disk(0.0).setup;
    auto non_baseline = [&](double alpha) {
        ClucbConfig cfg;
        cfg.alpha = alpha;
        ClucbPolicy policy(cfg, setup.env.public_view());
        Rng noise(1);
        for (int t = 0; t < 200; ++t) {
            const ClucbDecision d = policy.decide();
            policy.observe(d, setup.env.sample_reward(d.arm, noise));
        }
        return policy.non_baseline_plays();
    };
    EXPECT_GT(non_baseline(0.99), non_baseline(0.2));
    EXPECT_THROW(ClucbPolicy(ClucbConfig{1.0, 0.1, 256, 0.1}, setup.env.public_view()), std::invalid_argument);
    EXPECT_THROW(ClucbPolicy(ClucbConfig{0.2, 0.0, 256, 0.1}, setup.env.public_view()), std::invalid_argument);
}

TEST(ClucbPolicy, CountsAddUpAndNoiselessRunsKeepBudget) {
    const auto setup = fixtures::unit_disk(0.0).setup;
    ClucbPolicy policy(ClucbConfig{}, setup.env.public_view());
    Rng noise(1);
    double cumulative = 0.0;
    for (std::int64_t t = 1; t <= 2000; ++t) {
        ASSERT_EQ(policy.stage(), t);
        const ClucbDecision d = policy.decide();
        policy.observe(d, setup.env.sample_reward(d.arm, noise));
        cumulative += setup.env.expected_reward(d.arm);
        ASSERT_EQ(policy.baseline_plays() + policy.non_baseline_plays(), t);
        const auto& counts = policy.arm_counts();
        ASSERT_EQ(std::accumulate(counts.begin(), counts.end(), std::int64_t{0}), policy.non_baseline_plays());
        ASSERT_GE(cumulative, 0.8 * static_cast<double>(t) * 2.24 - 1e-9) << "t = " << t;
    }
    EXPECT_GT(policy.non_baseline_plays(), 0);
}
