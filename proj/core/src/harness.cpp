#include "sege/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace sege {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

StageTag stage_tag(DecisionTag tag) {
    switch (tag) {
        case DecisionTag::Greedy: return StageTag::Greedy;
        case DecisionTag::ExploreFromLcb: return StageTag::ExploreFromLcb;
        case DecisionTag::ExploreFromBaseline: return StageTag::ExploreFromBaseline;
    }
    return StageTag::Baseline;
}

// Shared bookkeeping for one played arm.
class TraceBuilder {
public:
    TraceBuilder(const Environment& env, RunTrace& trace, std::int64_t horizon) : env_(env), trace_(trace) {
        trace_.stages.reserve(static_cast<std::size_t>(horizon));
    }

    StageRecord& record(std::int64_t t, Vector arm, StageTag tag, double reward) {
        StageRecord rec;
        rec.t = t;
        rec.expected_reward = env_.expected_reward(arm);
        rec.regret_increment = env_.optimal_reward() - rec.expected_reward;
        cumulative_ += rec.regret_increment;
        rec.cumulative_regret = cumulative_;
        rec.arm = std::move(arm);
        rec.tag = tag;
        rec.reward = reward;
        rec.violated = rec.expected_reward < env_.spec().threshold;
        if (is_exploration(tag)) ++explorations_;
        rec.exploration_count = explorations_;
        rec.delta = kNaN;
        rec.radius = kNaN;
        rec.lcb_greedy = kNaN;
        trace_.stages.push_back(std::move(rec));
        return trace_.stages.back();
    }

private:
    const Environment& env_;
    RunTrace& trace_;
    double cumulative_ = 0.0;
    std::int64_t explorations_ = 0;
};

void run_sege(const ExperimentSetup& setup, std::int64_t horizon, ReplicationStreams& streams,
              const EpisodeOptions& options, RunTrace& trace) {
    const Environment& env = setup.env;
    SegePolicy policy(setup.sege, env.public_view());
    TraceBuilder builder(env, trace, horizon);
    const auto& problem = policy.problem();
    auto next_snapshot = options.snapshot_stages.begin();

    for (std::int64_t t = 1; t <= horizon; ++t) {
        if (next_snapshot != options.snapshot_stages.end() && *next_snapshot == t) {
            const double delta = setup.sege.risk.level(t);
            const double r = confidence_radius(t, std::min(delta, std::nextafter(1.0, 0.0)), env.dim(),
                                               setup.sege.lambda, problem.theta_bound, problem.noise_sd,
                                               problem.max_arm_norm);
            SafeSetSnapshot snap =
                safe_set_snapshot(policy.estimator(), problem.arm_set, r, problem.threshold, options.snapshot_grid);
            snap.stage = t;
            trace.snapshots.push_back(std::move(snap));
            ++next_snapshot;
        }

        const SegeDecision decision = policy.decide(streams.exploration);
        const double y = env.sample_reward(decision.arm, streams.noise);
        policy.observe(decision.arm, y);

        StageRecord& rec = builder.record(t, decision.arm, stage_tag(decision.tag), y);
        rec.lambda_min_prev = decision.lambda_min;
        rec.lambda_min_post = policy.estimator().min_information_eigenvalue();
        rec.delta = decision.delta;
        rec.radius = decision.radius;
        rec.lcb_greedy = decision.lcb_of_greedy;
    }
}

void run_clucb(const ExperimentSetup& setup, std::int64_t horizon, ReplicationStreams& streams, RunTrace& trace) {
    const Environment& env = setup.env;
    ClucbPolicy policy(setup.clucb, env.public_view());
    TraceBuilder builder(env, trace, horizon);
    for (std::int64_t t = 1; t <= horizon; ++t) {
        const ClucbDecision decision = policy.decide();
        const double y = env.sample_reward(decision.arm, streams.noise);
        policy.observe(decision, y);

        StageRecord& rec =
            builder.record(t, decision.arm, decision.played_baseline ? StageTag::Baseline : StageTag::Ucb, y);
        rec.lambda_min_prev = decision.lambda_min;
        rec.lambda_min_post = policy.estimator().min_information_eigenvalue();
        rec.delta = decision.delta;
        rec.radius = decision.radius;
    }
}

void run_baseline(const ExperimentSetup& setup, std::int64_t horizon, ReplicationStreams& streams, RunTrace& trace) {
    const Environment& env = setup.env;
    Estimator est(env.dim(), setup.sege.lambda);
    TraceBuilder builder(env, trace, horizon);
    for (std::int64_t t = 1; t <= horizon; ++t) {
        const double before = est.min_information_eigenvalue();
        const Vector& arm = env.spec().baseline_arm;
        const double y = env.sample_reward(arm, streams.noise);
        est.update(arm, y);
        StageRecord& rec = builder.record(t, arm, StageTag::Baseline, y);
        rec.lambda_min_prev = before;
        rec.lambda_min_post = est.min_information_eigenvalue();
    }
}

void run_unsafe_greedy(const ExperimentSetup& setup, std::int64_t horizon, ReplicationStreams& streams,
                       RunTrace& trace) {
    const Environment& env = setup.env;
    Estimator est(env.dim(), setup.sege.lambda);
    TraceBuilder builder(env, trace, horizon);
    for (std::int64_t t = 1; t <= horizon; ++t) {
        const double before = est.min_information_eigenvalue();
        const auto greedy = greedy_arm(est.estimate(), env.spec().arm_set);
        const Vector arm = greedy ? *greedy : env.spec().baseline_arm;
        const double y = env.sample_reward(arm, streams.noise);
        est.update(arm, y);
        StageRecord& rec = builder.record(t, arm, greedy ? StageTag::Greedy : StageTag::Baseline, y);
        rec.lambda_min_prev = before;
        rec.lambda_min_post = est.min_information_eigenvalue();
    }
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Sege: return "SEGE";
        case PolicyKind::Clucb: return "CLUCB";
        case PolicyKind::BaselineOnly: return "BASELINE_ONLY";
        case PolicyKind::UnsafeGreedy: return "UNSAFE_GREEDY";
    }
    return "?";
}

std::optional<PolicyKind> parse_policy(std::string_view text) {
    if (text == "SEGE" || text == "sege") return PolicyKind::Sege;
    if (text == "CLUCB" || text == "clucb") return PolicyKind::Clucb;
    if (text == "BASELINE_ONLY" || text == "baseline") return PolicyKind::BaselineOnly;
    if (text == "UNSAFE_GREEDY" || text == "greedy") return PolicyKind::UnsafeGreedy;
    return std::nullopt;
}

std::string_view to_string(StageTag tag) {
    switch (tag) {
        case StageTag::Greedy: return "GREEDY";
        case StageTag::ExploreFromLcb: return "EXPLORE_FROM_LCB";
        case StageTag::ExploreFromBaseline: return "EXPLORE_FROM_BASELINE";
        case StageTag::Ucb: return "UCB";
        case StageTag::Baseline: return "BASELINE";
    }
    return "?";
}

std::optional<StageTag> parse_stage_tag(std::string_view text) {
    for (StageTag tag : {StageTag::Greedy, StageTag::ExploreFromLcb, StageTag::ExploreFromBaseline, StageTag::Ucb,
                         StageTag::Baseline}) {
        if (to_string(tag) == text) return tag;
    }
    return std::nullopt;
}

std::int64_t RunTrace::violations() const {
    return std::count_if(stages.begin(), stages.end(), [](const StageRecord& s) { return s.violated; });
}

EpisodeError::EpisodeError(PolicyKind policy, std::uint64_t replication, std::int64_t stage, const std::string& what)
    : std::runtime_error(std::string(to_string(policy)) + " replication " + std::to_string(replication) +
                         " failed at stage " + std::to_string(stage) + ": " + what),
      stage_(stage),
      replication_(replication) {}

RunTrace run_episode(PolicyKind policy, const ExperimentSetup& setup, std::int64_t horizon, std::uint64_t seed,
                     std::uint64_t replication, const EpisodeOptions& options) {
    if (horizon < 1) throw std::invalid_argument("run_episode: horizon must be >= 1");
    RunTrace trace;
    trace.policy = policy;
    trace.seed = seed;
    trace.replication = replication;

    EpisodeOptions opts = options;
    std::sort(opts.snapshot_stages.begin(), opts.snapshot_stages.end());
    opts.snapshot_stages.erase(std::unique(opts.snapshot_stages.begin(), opts.snapshot_stages.end()),
                               opts.snapshot_stages.end());

    ReplicationStreams streams(seed, replication);
    try {
        switch (policy) {
            case PolicyKind::Sege: run_sege(setup, horizon, streams, opts, trace); break;
            case PolicyKind::Clucb: run_clucb(setup, horizon, streams, trace); break;
            case PolicyKind::BaselineOnly: run_baseline(setup, horizon, streams, trace); break;
            case PolicyKind::UnsafeGreedy: run_unsafe_greedy(setup, horizon, streams, trace); break;
        }
    } catch (const EpisodeError&) {
        throw;
    } catch (const std::exception& e) {
        throw EpisodeError(policy, replication, static_cast<std::int64_t>(trace.stages.size()) + 1, e.what());
    }
    return trace;
}

std::vector<RunTrace> run_replications(PolicyKind policy, const ExperimentSetup& setup, std::int64_t horizon,
                                       std::uint64_t seed, std::size_t count, unsigned threads,
                                       const EpisodeOptions& options) {
    std::vector<RunTrace> traces(count);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::size_t failed_index = count;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t rep = next.fetch_add(1);
            if (rep >= count) return;
            try {
                // Snapshots are only taken for replication 0.
                traces[rep] = run_episode(policy, setup, horizon, seed, rep, rep == 0 ? options : EpisodeOptions{});
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (rep < failed_index) {
                    failed_index = rep;
                    failure = std::current_exception();
                }
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return traces;
}

AggregateSummary aggregate(std::span<const RunTrace> traces, double threshold) {
    if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
    const std::size_t horizon = traces.front().stages.size();
    for (const auto& tr : traces) {
        if (tr.stages.size() != horizon) throw std::invalid_argument("aggregate: traces have different lengths");
    }

    AggregateSummary s;
    s.policy = traces.front().policy;
    s.horizon = static_cast<std::int64_t>(horizon);
    s.replications = traces.size();
    s.seed = traces.front().seed;
    const double inf = std::numeric_limits<double>::infinity();
    s.mean_reward.assign(horizon, 0.0);
    s.min_reward.assign(horizon, inf);
    s.max_reward.assign(horizon, -inf);
    s.mean_regret.assign(horizon, 0.0);
    s.min_regret.assign(horizon, inf);
    s.max_regret.assign(horizon, -inf);
    s.mean_exploration.assign(horizon, 0.0);

    for (const auto& tr : traces) {
        s.replication_ids.push_back(tr.replication);
        bool any = false;
        for (std::size_t k = 0; k < horizon; ++k) {
            const StageRecord& st = tr.stages[k];
            s.mean_reward[k] += st.expected_reward;
            s.min_reward[k] = std::min(s.min_reward[k], st.expected_reward);
            s.max_reward[k] = std::max(s.max_reward[k], st.expected_reward);
            s.mean_regret[k] += st.cumulative_regret;
            s.min_regret[k] = std::min(s.min_regret[k], st.cumulative_regret);
            s.max_regret[k] = std::max(s.max_regret[k], st.cumulative_regret);
            s.mean_exploration[k] += static_cast<double>(st.exploration_count);
            if (st.expected_reward < threshold) {
                ++s.total_violations;
                any = true;
            }
        }
        if (any) ++s.runs_with_violation;
    }
    const double n = static_cast<double>(traces.size());
    for (std::size_t k = 0; k < horizon; ++k) {
        s.mean_reward[k] /= n;
        s.mean_regret[k] /= n;
        s.mean_exploration[k] /= n;
    }
    s.mean_final_exploration = horizon == 0 ? 0.0 : s.mean_exploration.back();
    return s;
}

std::vector<std::int64_t> default_snapshot_stages(std::int64_t horizon) {
    std::vector<std::int64_t> out;
    for (std::int64_t t : {250, 500, 1000, 2000, 5000, 10000, 50000}) {
        if (t <= horizon) out.push_back(t);
    }
    return out;
}

}  // namespace sege
