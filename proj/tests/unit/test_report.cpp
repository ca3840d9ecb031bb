#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "sege/report.hpp"
#include "support/fixtures.hpp"

using namespace sege;

TEST(Report, TraceTableRoundTrip) {
    const auto resolved = fixtures::unit_disk();
    std::vector<RunTrace> traces;
    for (PolicyKind kind : kAllPolicies) traces.push_back(run_episode(kind, resolved.setup, 120, 9, 4));
    std::ostringstream out;
    write_trace_table(out, traces);
    EXPECT_EQ(out.str().rfind("# seed=9 replication=4\n", 0), 0u);

    std::istringstream in(out.str());
    const auto back = read_trace_table(in);
    ASSERT_EQ(back.size(), traces.size());
    for (std::size_t p = 0; p < traces.size(); ++p) {
        EXPECT_EQ(back[p].policy, traces[p].policy);
        EXPECT_EQ(back[p].seed, 9u);
        EXPECT_EQ(back[p].replication, 4u);
        ASSERT_EQ(back[p].stages.size(), traces[p].stages.size());
        for (std::size_t k = 0; k < traces[p].stages.size(); ++k) {
            const auto& a = traces[p].stages[k];
            const auto& b = back[p].stages[k];
            ASSERT_EQ(a.t, b.t);
            ASSERT_EQ(a.arm, b.arm);
            ASSERT_EQ(a.tag, b.tag);
            ASSERT_EQ(a.reward, b.reward);
            ASSERT_EQ(a.expected_reward, b.expected_reward);
            ASSERT_EQ(a.cumulative_regret, b.cumulative_regret);
            ASSERT_EQ(a.lambda_min_post, b.lambda_min_post);
            ASSERT_EQ(std::isnan(a.radius), std::isnan(b.radius));
            if (!std::isnan(a.radius)) ASSERT_EQ(a.radius, b.radius);
            ASSERT_EQ(a.violated, b.violated);
            ASSERT_EQ(a.exploration_count, b.exploration_count);
        }
    }
}

TEST(Report, MalformedTableThrows) {
    std::istringstream bad("# seed=1 replication=0\nt,policy\n1,SEGE,zz\n");
    EXPECT_THROW((void)read_trace_table(bad), std::runtime_error);
}

TEST(Report, FileNamesAndCheckpoints) {
    EXPECT_EQ(trace_file_name(7, 100), "trace_rep0007.csv");
    EXPECT_EQ(trace_file_name(0, 1), "trace_rep0000.csv");
    const auto cps = summary_checkpoints(1000);
    EXPECT_EQ(cps.back(), 1000);
    EXPECT_TRUE(std::is_sorted(cps.begin(), cps.end()));
    EXPECT_NE(std::find(cps.begin(), cps.end(), 250), cps.end());
    EXPECT_EQ(std::find(cps.begin(), cps.end(), 2000), cps.end());
}

TEST(Report, SummaryMatchesTraces) {
    ExperimentConfig config = default_config();
    config.horizon = 250;
    config.replications = 3;
    const auto resolved = resolve(config);
    const auto traces = run_replications(PolicyKind::Sege, resolved.setup, 250, 1, 3, 1);
    const std::vector<AggregateSummary> aggs{aggregate(traces, resolved.threshold)};
    const auto doc = nlohmann::json::parse(summary_json(config, resolved, aggs));

    EXPECT_DOUBLE_EQ(doc["resolved"]["baseline_bound"].get<double>(), resolved.baseline_bound);
    EXPECT_DOUBLE_EQ(doc["resolved"]["rho"].get<double>(), resolved.rho);
    const auto& sege = doc["policies"]["SEGE"];
    EXPECT_EQ(sege["replications"].get<int>(), 3);
    EXPECT_EQ(sege["total_violations"].get<int>(), 0);
    bool saw_final = false;
    for (const auto& cp : sege["checkpoints"]) {
        const auto t = cp["t"].get<std::size_t>();
        double mean = 0.0, hi = -1e300;
        for (const auto& tr : traces) {
            mean += tr.stages[t - 1].cumulative_regret / 3.0;
            hi = std::max(hi, tr.stages[t - 1].cumulative_regret);
        }
        EXPECT_NEAR(cp["mean_regret"].get<double>(), mean, 1e-9 * (1.0 + mean));
        EXPECT_DOUBLE_EQ(cp["max_regret"].get<double>(), hi);
        saw_final |= t == 250;
    }
    EXPECT_TRUE(saw_final);
    EXPECT_EQ(summary_json(config, resolved, aggs), summary_json(config, resolved, aggs));
    EXPECT_FALSE(doc["config"].contains("run.output_dir"));
}
