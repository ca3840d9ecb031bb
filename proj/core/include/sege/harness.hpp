#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sege/clucb.hpp"
#include "sege/environment.hpp"
#include "sege/safe_set.hpp"
#include "sege/sege_policy.hpp"

namespace sege {

enum class PolicyKind { Sege, Clucb, BaselineOnly, UnsafeGreedy };

inline constexpr std::array<PolicyKind, 4> kAllPolicies{PolicyKind::Sege, PolicyKind::Clucb, PolicyKind::BaselineOnly,
                                                        PolicyKind::UnsafeGreedy};

/// "SEGE", "CLUCB", "BASELINE_ONLY", "UNSAFE_GREEDY"
[[nodiscard]] std::string_view to_string(PolicyKind kind);
/// Accepts the upper-case names above and the CLI spellings sege|clucb|baseline|greedy.
[[nodiscard]] std::optional<PolicyKind> parse_policy(std::string_view text);

enum class StageTag { Greedy, ExploreFromLcb, ExploreFromBaseline, Ucb, Baseline };

[[nodiscard]] std::string_view to_string(StageTag tag);
[[nodiscard]] std::optional<StageTag> parse_stage_tag(std::string_view text);
[[nodiscard]] inline bool is_exploration(StageTag tag) {
    return tag == StageTag::ExploreFromLcb || tag == StageTag::ExploreFromBaseline;
}

struct StageRecord {
    std::int64_t t = 0;
    Vector arm;
    StageTag tag = StageTag::Baseline;
    double reward = 0.0;           // observed Y_t
    double expected_reward = 0.0;  // <X_t, theta*>
    double regret_increment = 0.0; // <X* - X_t, theta*>
    double cumulative_regret = 0.0;
    double lambda_min_prev = 0.0;  // lambda_min(V_{t-1}), the gate's input
    double lambda_min_post = 0.0;  // lambda_min(V_t)
    double delta = 0.0;            // delta_t (NaN for policies without a risk level)
    double radius = 0.0;           // confidence radius used at stage t (NaN if none)
    double lcb_greedy = 0.0;       // LCB_t(X^CE) for SEGE, NaN otherwise
    bool violated = false;         // <X_t, theta*> < b
    std::int64_t exploration_count = 0;  // N_t
};

struct RunTrace {
    PolicyKind policy = PolicyKind::Sege;
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
    std::vector<StageRecord> stages;
    std::vector<SafeSetSnapshot> snapshots;

    [[nodiscard]] std::int64_t violations() const;
    [[nodiscard]] double final_regret() const { return stages.empty() ? 0.0 : stages.back().cumulative_regret; }
};

/// Everything needed to run any of the policies on one instance.
struct ExperimentSetup {
    Environment env;
    SegeConfig sege;
    ClucbConfig clucb;
};

struct EpisodeOptions {
    std::vector<std::int64_t> snapshot_stages;  // SEGE only
    int snapshot_grid = 200;
};

/// Raised when a policy fails mid-run; records the failing stage.
class EpisodeError : public std::runtime_error {
public:
    EpisodeError(PolicyKind policy, std::uint64_t replication, std::int64_t stage, const std::string& what);
    [[nodiscard]] std::int64_t stage() const noexcept { return stage_; }
    [[nodiscard]] std::uint64_t replication() const noexcept { return replication_; }

private:
    std::int64_t stage_;
    std::uint64_t replication_;
};

/// Runs one replication for T stages. Bit-for-bit reproducible from
/// (policy, setup, T, seed, replication).
[[nodiscard]] RunTrace run_episode(PolicyKind policy, const ExperimentSetup& setup, std::int64_t horizon,
                                   std::uint64_t seed, std::uint64_t replication = 0,
                                   const EpisodeOptions& options = {});

/// Replications 0..count-1 run on up to `threads` workers (0 = hardware
/// concurrency); the result is ordered by replication index.
[[nodiscard]] std::vector<RunTrace> run_replications(PolicyKind policy, const ExperimentSetup& setup,
                                                     std::int64_t horizon, std::uint64_t seed, std::size_t count,
                                                     unsigned threads = 0, const EpisodeOptions& options = {});

struct AggregateSummary {
    PolicyKind policy = PolicyKind::Sege;
    std::int64_t horizon = 0;
    std::size_t replications = 0;
    std::vector<double> mean_reward, min_reward, max_reward;  // stagewise expected reward
    std::vector<double> mean_regret, min_regret, max_regret;  // cumulative regret
    std::vector<double> mean_exploration;                     // N_t
    std::int64_t total_violations = 0;
    std::int64_t runs_with_violation = 0;
    double mean_final_exploration = 0.0;
    std::vector<std::uint64_t> replication_ids;
    std::uint64_t seed = 0;
};

/// Stagewise reduction over traces of equal length. Violations are
/// recounted against the threshold b. Throws std::invalid_argument on
/// empty input or mismatched lengths.
[[nodiscard]] AggregateSummary aggregate(std::span<const RunTrace> traces, double threshold);

/// Stages of the safe-set figure, truncated to the horizon.
[[nodiscard]] std::vector<std::int64_t> default_snapshot_stages(std::int64_t horizon);

}  // namespace sege
