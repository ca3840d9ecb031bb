#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "commands.hpp"
#include "sege/report.hpp"

using namespace sege;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("sege_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig small_run(const fs::path& out, std::size_t reps = 10, std::int64_t horizon = 300) {
    ExperimentConfig c = default_config();
    c.replications = reps;
    c.horizon = horizon;
    c.output_dir = out.string();
    c.threads = 2;
    return c;
}

}  // namespace

TEST(Cli, RunWritesTheDocumentedFiles) {
    const fs::path out = scratch_dir("files");
    std::ostringstream log, err;
    ASSERT_EQ(cli::run_command(small_run(out), log, err), cli::kOk) << err.str();
    std::size_t traces = 0;
    for (const auto& entry : fs::directory_iterator(out)) traces += entry.path().extension() == ".csv";
    EXPECT_EQ(traces, 10u);
    for (const char* name : {"summary.json", "timings.json", "reward.svg", "regret.svg", "safe_set.svg"}) {
        EXPECT_TRUE(fs::exists(out / name)) << name;
    }
    EXPECT_TRUE(fs::exists(out / "trace_rep09.csv") || fs::exists(out / "trace_rep0009.csv"));
    fs::remove_all(out);
}

TEST(Cli, RerunsAreByteIdentical) {
    const fs::path a = scratch_dir("rerun_a");
    const fs::path b = scratch_dir("rerun_b");
    std::ostringstream log, err;
    ASSERT_EQ(cli::run_command(small_run(a, 4, 200), log, err), cli::kOk);
    ExperimentConfig second = small_run(b, 4, 200);
    second.threads = 1;
    ASSERT_EQ(cli::run_command(second, log, err), cli::kOk);
    for (const auto& entry : fs::directory_iterator(a)) {
        const auto name = entry.path().filename();
        if (name == "timings.json") continue;
        EXPECT_EQ(slurp(entry.path()), slurp(b / name)) << name;
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Cli, AllPoliciesShareTraceFiles) {
    const fs::path out = scratch_dir("all");
    ExperimentConfig c = small_run(out, 2, 100);
    cli::RunOverrides o;
    o.policy = "all";
    cli::apply_overrides(c, o);
    std::ostringstream log, err;
    ASSERT_EQ(cli::run_command(c, log, err), cli::kOk) << err.str();

    const auto doc = nlohmann::json::parse(slurp(out / "summary.json"));
    EXPECT_EQ(doc["policies"].size(), 4u);
    for (const char* p : {"SEGE", "CLUCB", "BASELINE_ONLY", "UNSAFE_GREEDY"}) EXPECT_TRUE(doc["policies"].contains(p));

    std::ifstream in(out / trace_file_name(1, 2));
    const auto traces = read_trace_table(in);
    ASSERT_EQ(traces.size(), 4u);
    for (const auto& tr : traces) {
        EXPECT_EQ(tr.replication, 1u);
        EXPECT_EQ(tr.stages.size(), 100u);
    }
    fs::remove_all(out);
}

TEST(Cli, OverridesAndExitCodes) {
    ExperimentConfig c = default_config();
    cli::RunOverrides o;
    o.seed = 42;
    o.replications = 3;
    o.horizon = 77;
    o.policy = "clucb";
    cli::apply_overrides(c, o);
    EXPECT_EQ(c.seed, 42u);
    EXPECT_EQ(c.replications, 3u);
    EXPECT_EQ(c.horizon, 77);
    EXPECT_EQ(c.policies, (std::vector<PolicyKind>{PolicyKind::Clucb}));
    o.policy = "nonsense";
    EXPECT_THROW(cli::apply_overrides(c, o), ConfigError);

    std::ostringstream log, err;
    ExperimentConfig bad = default_config();
    bad.threshold = {true, 1.1};
    bad.output_dir = scratch_dir("bad").string();
    EXPECT_EQ(cli::run_command(bad, log, err), cli::kConfigError);
    EXPECT_NE(err.str().find("b >= b0"), std::string::npos);

    EXPECT_EQ(cli::validate_command(SEGE_SOURCE_DIR "/configs/unit_disk.cfg", log, err), cli::kOk);
    EXPECT_EQ(cli::validate_command("/nonexistent/file.cfg", log, err), cli::kConfigError);
}

TEST(Cli, SnapshotWritesContours) {
    const fs::path out = scratch_dir("snapshot");
    ExperimentConfig c = default_config();
    c.output_dir = out.string();
    std::ostringstream log, err;
    ASSERT_EQ(cli::snapshot_command(c, {50, 300}, log, err), cli::kOk) << err.str();
    EXPECT_TRUE(fs::exists(out / "safe_set.svg"));
    const std::string csv = slurp(out / "snapshots.csv");
    EXPECT_EQ(csv.rfind("stage,", 0), 0u);
    EXPECT_NE(csv.find("\n300,"), std::string::npos);
    fs::remove_all(out);
}
