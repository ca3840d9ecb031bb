#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sege/config.hpp"

namespace sege::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kRuntimeError = 2 };

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replications;
    std::optional<std::int64_t> horizon;
    std::optional<std::string> policy;  // sege|clucb|baseline|greedy|all
    std::optional<std::string> output_dir;
    std::optional<unsigned> threads;
};

/// Applies the overrides in place; throws ConfigError for an unknown policy.
void apply_overrides(ExperimentConfig& config, const RunOverrides& overrides);

/// Runs every selected policy and writes into the output directory:
///   trace_repNNNN.csv  one per replication, rows for every policy
///   summary.json       config echo, resolved values, aggregates
///   timings.json       wall-clock seconds per policy
///   reward.svg, regret.svg, safe_set.svg
/// safe_set.svg needs SEGE and a planar arm set; otherwise it is skipped.
int run_command(const ExperimentConfig& config, std::ostream& log, std::ostream& err);

/// Loads and resolves the config, printing the resolved values.
int validate_command(const std::filesystem::path& config_path, std::ostream& log, std::ostream& err);

/// One SEGE replication up to the last requested stage; writes
/// safe_set.svg and snapshots.csv (stage, chain, x1, x2) to `output_dir`.
int snapshot_command(const ExperimentConfig& config, std::vector<std::int64_t> stages, std::ostream& log,
                     std::ostream& err);

}  // namespace sege::cli
