#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sege/config.hpp"

using namespace sege;

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

// Field named by the ConfigError thrown for `c`, or "<none>".
std::string failing_field(const ExperimentConfig& c, std::string* message = nullptr) {
    try {
        (void)resolve(c);
    } catch (const ConfigError& e) {
        if (message) *message = e.what();
        return e.field();
    }
    return "<none>";
}

std::string parse_error_field(const std::string& text) {
    try {
        (void)parse(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<none>";
}

}  // namespace

TEST(Config, ShippedFileResolvesToTheDiskInstance) {
    const ExperimentConfig c = load_config(SEGE_SOURCE_DIR "/configs/unit_disk.cfg");
    EXPECT_EQ(c.horizon, 10000);
    EXPECT_EQ(c.replications, 100u);
    EXPECT_EQ(c.seed, 1u);
    EXPECT_EQ(c.clucb.discretization, 256);
    const ResolvedExperiment r = resolve(c);
    EXPECT_NEAR(r.baseline_bound, 2.24, 1e-12);
    EXPECT_NEAR(r.threshold, 1.792, 1e-12);
    EXPECT_NEAR(r.rho_bar, 0.224, 1e-12);
    EXPECT_NEAR(r.rho, 0.224, 1e-12);
    EXPECT_TRUE(r.baseline_bound_auto);
    EXPECT_TRUE(r.threshold_from_fraction);
    EXPECT_TRUE(r.rho_auto);
    EXPECT_LT((r.setup.env.optimal_arm() - (Vector(2) << 1.6, 1.8).finished()).norm(), 1e-12);
    EXPECT_NEAR(r.setup.env.optimal_reward(), 2.4, 1e-12);
    EXPECT_EQ(r.snapshot_stages, (std::vector<std::int64_t>{250, 500, 1000, 2000, 5000, 10000}));
    EXPECT_EQ(c.snapshot_stages.size(), 0u);
}

TEST(Config, DefaultMatchesShippedFileExceptRunSection) {
    ExperimentConfig shipped = load_config(SEGE_SOURCE_DIR "/configs/unit_disk.cfg");
    shipped.output_dir = "out";
    EXPECT_EQ(shipped, default_config());
}

TEST(Config, RoundTrip) {
    ExperimentConfig c = default_config();
    c.shape = (Matrix(2, 2) << 2.0, 0.3, 0.3, 0.5).finished();
    c.theta_star << 0.1 / 3.0, -0.7;
    c.baseline_bound = {BaselineBoundSpec::Mode::Explicit, -0.123456789012345};
    c.threshold = {false, -1.0 / 7.0};
    c.rho_auto = false;
    c.rho = 0.01;
    c.risk = {RiskSchedule::Form::FloorExponential, 0.05, 0.3};
    c.policies = {PolicyKind::Clucb, PolicyKind::Sege};
    c.snapshot_stages = {7, 3};
    c.threads = 2;
    const ExperimentConfig back = parse(config_to_string(c));
    EXPECT_EQ(back, c);
    EXPECT_EQ(config_to_string(back), config_to_string(c));
}

TEST(Config, ParseErrorsNameTheKey) {
    EXPECT_EQ(parse_error_field("bogus = 1\n"), "bogus");
    EXPECT_EQ(parse_error_field("sege.c = 1\nsege.c = 2\n"), "sege.c");
    EXPECT_EQ(parse_error_field("sege.c = abc\n"), "sege.c");
    EXPECT_EQ(parse_error_field("sege.c =\n"), "sege.c");
    EXPECT_EQ(parse_error_field("no equals sign\n"), "");
    EXPECT_EQ(parse_error_field("arm_set.radius = 1\narm_set.shape = 1, 0; 0, 1\n"), "arm_set");
    EXPECT_EQ(parse_error_field("threshold.fraction = 0.5\nthreshold.value = 1\n"), "threshold");
    EXPECT_EQ(parse_error_field("dimension = 3\n"), "dimension");
    EXPECT_EQ(parse_error_field("run.policies = sege, sege\n"), "run.policies");
    EXPECT_EQ(parse_error_field("run.policies = ucb\n"), "run.policies");
    EXPECT_EQ(parse_error_field("sege.risk = linear\n"), "sege.risk");
    EXPECT_EQ(parse_error_field("arm_set.radius = -1\n"), "arm_set.radius");
    EXPECT_EQ(parse_error_field("# only a comment\n\n"), "<none>");
}

TEST(Config, ValidationNamesTheField) {
    std::string message;
    ExperimentConfig c = default_config();
    c.threshold = {true, 1.1};
    EXPECT_EQ(failing_field(c, &message), "threshold.fraction");
    EXPECT_NE(message.find("b >= b0"), std::string::npos);

    c = default_config();
    c.baseline_bound = {BaselineBoundSpec::Mode::Explicit, 2.3};
    EXPECT_EQ(failing_field(c), "baseline.bound");

    c = default_config();
    c.theta_star << 0.9, 0.8;
    EXPECT_EQ(failing_field(c), "theta_star");

    c = default_config();
    c.baseline_arm << 2.5, 1.0;
    EXPECT_EQ(failing_field(c), "baseline.arm");

    c = default_config();
    c.rho_auto = false;
    c.rho = 0.3;
    EXPECT_EQ(failing_field(c), "sege.rho");

    c = default_config();
    c.shape << 1, 0.5, 0.4, 1;
    EXPECT_EQ(failing_field(c), "arm_set.shape");

    c = default_config();
    c.shape << 1, 0, 0, -1;
    EXPECT_EQ(failing_field(c), "arm_set.shape");

    c = default_config();
    c.horizon = 0;
    EXPECT_EQ(failing_field(c), "run.horizon");

    c = default_config();
    c.clucb.alpha = 1.0;
    EXPECT_EQ(failing_field(c), "clucb.alpha");

    c = default_config();
    c.center = Vector::Ones(3);
    c.shape = Matrix::Identity(3, 3);
    c.theta_star = Vector::Constant(3, 0.5);
    c.baseline_arm = Vector::Ones(3);
    c.policies = {PolicyKind::Clucb};
    EXPECT_EQ(failing_field(c), "run.policies");
    c.policies = {PolicyKind::Sege};
    EXPECT_EQ(failing_field(c), "<none>");
    EXPECT_TRUE(resolve(c).snapshot_stages.empty());
}

TEST(Config, WorstCaseBaselineBound) {
    ExperimentConfig c = default_config();
    c.baseline_bound = {BaselineBoundSpec::Mode::WorstCase, 0.0};
    c.threshold = {false, -3.0};
    const ResolvedExperiment r = resolve(c);
    EXPECT_NEAR(r.baseline_bound, -std::sqrt(1.2 * 1.2 + 1.9 * 1.9), 1e-15);
    EXPECT_TRUE(r.baseline_bound_auto);
    EXPECT_FALSE(r.threshold_from_fraction);
}

TEST(Config, SnapshotStagesAreSortedAndTruncated) {
    ExperimentConfig c = default_config();
    c.horizon = 600;
    c.snapshot_stages = {500, 700, 10, 500};
    EXPECT_EQ(resolve(c).snapshot_stages, (std::vector<std::int64_t>{10, 500}));
}
