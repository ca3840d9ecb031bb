#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace sege;

    CLI::App app{"Safe linear bandit simulations"};
    app.require_subcommand(1);

    std::string config_path;
    cli::RunOverrides overrides;

    auto* run = app.add_subcommand("run", "Run replications and write traces, summary and plots");
    run->add_option("--config", config_path, "Experiment config file")->required();
    run->add_option("--seed", overrides.seed, "Master seed");
    run->add_option("--reps", overrides.replications, "Number of replications")->check(CLI::PositiveNumber);
    run->add_option("--horizon", overrides.horizon, "Stages per replication")->check(CLI::PositiveNumber);
    run->add_option("--policy", overrides.policy, "Policy to run")
        ->check(CLI::IsMember({"sege", "clucb", "baseline", "greedy", "all"}));
    run->add_option("--out", overrides.output_dir, "Output directory");
    run->add_option("--threads", overrides.threads, "Worker threads (0 = all cores)");

    auto* validate = app.add_subcommand("validate", "Check a config and print the resolved values");
    validate->add_option("--config", config_path, "Experiment config file")->required();

    std::vector<std::int64_t> stages;
    auto* snapshot = app.add_subcommand("snapshot", "Safe-set contours of one SEGE run at the given stages");
    snapshot->add_option("--config", config_path, "Experiment config file")->required();
    snapshot->add_option("--stages", stages, "Stages to capture")->required()->expected(1, -1);
    snapshot->add_option("--seed", overrides.seed, "Master seed");
    snapshot->add_option("--out", overrides.output_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kOk : cli::kConfigError;
    }

    if (*validate) return cli::validate_command(config_path, std::cout, std::cerr);

    ExperimentConfig config;
    try {
        config = load_config(config_path);
        cli::apply_overrides(config, overrides);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::kConfigError;
    }
    if (*run) return cli::run_command(config, std::cout, std::cerr);
    return cli::snapshot_command(config, stages, std::cout, std::cerr);
}
