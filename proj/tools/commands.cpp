#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "sege/harness.hpp"
#include "sege/report.hpp"
#include "sege/svg_plot.hpp"

namespace sege::cli {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << contents;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

void apply_overrides(ExperimentConfig& config, const RunOverrides& o) {
    if (o.seed) config.seed = *o.seed;
    if (o.replications) config.replications = *o.replications;
    if (o.horizon) config.horizon = *o.horizon;
    if (o.output_dir) config.output_dir = *o.output_dir;
    if (o.threads) config.threads = *o.threads;
    if (o.policy) {
        if (*o.policy == "all") {
            config.policies.assign(kAllPolicies.begin(), kAllPolicies.end());
        } else {
            const auto kind = parse_policy(*o.policy);
            if (!kind) throw ConfigError("--policy", "unknown policy '" + *o.policy + "'");
            config.policies = {*kind};
        }
    }
}

int run_command(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
    std::optional<ResolvedExperiment> resolved;
    try {
        resolved.emplace(resolve(config));
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        const fs::path out_dir = config.output_dir;
        fs::create_directories(out_dir);

        const ExperimentSetup& setup = resolved->setup;
        std::vector<AggregateSummary> aggregates;
        std::vector<PolicyTiming> timings;
        std::vector<SafeSetSnapshot> snapshots;

        for (std::size_t p = 0; p < config.policies.size(); ++p) {
            const PolicyKind policy = config.policies[p];
            EpisodeOptions options;
            if (policy == PolicyKind::Sege) {
                options.snapshot_stages = resolved->snapshot_stages;
                options.snapshot_grid = config.snapshot_grid;
            }
            const auto t0 = std::chrono::steady_clock::now();
            std::vector<RunTrace> traces = run_replications(policy, setup, config.horizon, config.seed,
                                                            config.replications, config.threads, options);
            timings.push_back({policy, seconds_since(t0)});

            // One file per replication; later policies append their rows.
            for (const auto& trace : traces) {
                const fs::path path = out_dir / trace_file_name(trace.replication, config.replications);
                std::ofstream out(path, std::ios::binary | (p == 0 ? std::ios::trunc : std::ios::app));
                if (p == 0) write_trace_header(out, trace.seed, trace.replication, setup.env.dim());
                write_trace_rows(out, trace);
                if (!out) throw std::runtime_error("cannot write " + path.string());
            }
            if (policy == PolicyKind::Sege) snapshots = std::move(traces.front().snapshots);
            aggregates.push_back(aggregate(traces, resolved->threshold));

            const auto& a = aggregates.back();
            log << to_string(policy) << ": " << a.replications << " x " << a.horizon
                << " stages, violations " << a.total_violations << " (" << a.runs_with_violation
                << " runs), mean regret " << a.mean_regret.back() << ", mean N_T " << a.mean_final_exploration
                << ", " << timings.back().seconds << " s\n";
        }

        write_file(out_dir / "summary.json", summary_json(config, *resolved, aggregates));
        write_file(out_dir / "reward.svg", reward_band_svg(aggregates, resolved->threshold, resolved->baseline_bound));
        write_file(out_dir / "regret.svg", regret_svg(aggregates));
        const bool has_sege =
            std::find(config.policies.begin(), config.policies.end(), PolicyKind::Sege) != config.policies.end();
        if (has_sege && setup.env.dim() == 2) {
            write_file(out_dir / "safe_set.svg", safe_set_svg(setup.env.spec().arm_set, snapshots,
                                                              setup.env.optimal_arm(), setup.env.spec().baseline_arm));
        } else {
            log << "safe_set.svg skipped (needs SEGE on a planar arm set)\n";
        }
        write_file(out_dir / "timings.json", timings_json(timings, seconds_since(start)));
        log << "wrote " << config.replications << " trace files and plots to " << out_dir.string() << '\n';
    } catch (const std::exception& e) {
        err << "run failed: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}

int validate_command(const fs::path& config_path, std::ostream& log, std::ostream& err) {
    try {
        const ExperimentConfig config = load_config(config_path);
        const ResolvedExperiment r = resolve(config);
        const Environment& env = r.setup.env;
        log << "config ok: d = " << env.dim() << ", b0 = " << r.baseline_bound
            << (r.baseline_bound_auto ? " (auto)" : "") << ", b = " << r.threshold << ", rho = " << r.rho
            << (r.rho_auto ? " (auto)" : "") << ", rho_bar = " << r.rho_bar << ", X* = (";
        for (Eigen::Index i = 0; i < env.dim(); ++i) log << (i ? ", " : "") << env.optimal_arm()(i);
        log << "), optimal reward " << env.optimal_reward() << '\n';
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    return kOk;
}

int snapshot_command(const ExperimentConfig& config, std::vector<std::int64_t> stages, std::ostream& log,
                     std::ostream& err) {
    std::optional<ResolvedExperiment> resolved;
    try {
        resolved.emplace(resolve(config));
        if (resolved->setup.env.dim() != 2) throw ConfigError("arm_set.center", "snapshots need a planar arm set");
        if (stages.empty()) throw ConfigError("--stages", "no stages given");
        for (auto s : stages) {
            if (s < 1) throw ConfigError("--stages", "stages start at 1");
        }
        if (config.snapshot_grid < 16) throw ConfigError("run.snapshot_grid", "grid must be at least 16");
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        std::sort(stages.begin(), stages.end());
        stages.erase(std::unique(stages.begin(), stages.end()), stages.end());
        const fs::path out_dir = config.output_dir;
        fs::create_directories(out_dir);

        EpisodeOptions options{stages, config.snapshot_grid};
        const RunTrace trace = run_episode(PolicyKind::Sege, resolved->setup, stages.back(), config.seed, 0, options);
        const Environment& env = resolved->setup.env;
        write_file(out_dir / "safe_set.svg",
                   safe_set_svg(env.spec().arm_set, trace.snapshots, env.optimal_arm(), env.spec().baseline_arm));

        std::ofstream csv(out_dir / "snapshots.csv", std::ios::binary | std::ios::trunc);
        csv.precision(17);
        csv << "stage,chain,x1,x2\n";
        for (const auto& snap : trace.snapshots) {
            for (std::size_t c = 0; c < snap.contours.size(); ++c) {
                for (const auto& p : snap.contours[c]) csv << snap.stage << ',' << c << ',' << p(0) << ',' << p(1) << '\n';
            }
            log << "t = " << snap.stage << ": radius " << snap.radius << ", " << snap.inside_count() << " of "
                << snap.grid * snap.grid << " lattice points safe\n";
        }
        if (!csv) throw std::runtime_error("cannot write snapshots.csv");
    } catch (const std::exception& e) {
        err << "snapshot failed: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}

}  // namespace sege::cli
