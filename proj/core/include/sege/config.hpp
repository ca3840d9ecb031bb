#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sege/clucb.hpp"
#include "sege/geometry.hpp"
#include "sege/harness.hpp"
#include "sege/sege_policy.hpp"

namespace sege {

/// Parse or validation failure. `field()` is the dotted key at fault, empty
/// for file-level problems.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message);
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// b0 may be given explicitly, as "auto" (<X0, theta*>) or as "worst-case"
/// (-S ||X0||).
struct BaselineBoundSpec {
    enum class Mode { Explicit, Auto, WorstCase };
    Mode mode = Mode::Auto;
    double value = 0.0;  // used when mode == Explicit

    bool operator==(const BaselineBoundSpec&) const = default;
};

/// b is either an explicit value or fraction * b0.
struct ThresholdSpec {
    bool is_fraction = true;
    double value = 0.8;

    bool operator==(const ThresholdSpec&) const = default;
};

struct ExperimentConfig {
    Vector center;
    Matrix shape;
    Vector theta_star;
    double theta_bound = 1.0;
    double noise_sd = 1.0;
    Vector baseline_arm;
    BaselineBoundSpec baseline_bound;
    ThresholdSpec threshold;

    bool rho_auto = true;
    double rho = 0.0;
    double gate_c = 0.5;
    double lambda = 0.1;
    RiskSchedule risk;

    ClucbConfig clucb;

    std::vector<PolicyKind> policies{PolicyKind::Sege};
    std::int64_t horizon = 10000;
    std::size_t replications = 100;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string output_dir = "out";
    std::vector<std::int64_t> snapshot_stages;  // empty: default list truncated to T
    int snapshot_grid = 200;

    [[nodiscard]] Eigen::Index dim() const noexcept { return center.size(); }
    bool operator==(const ExperimentConfig& other) const;
};

/// The config with every "auto" value resolved and the instance built.
struct ResolvedExperiment {
    ExperimentSetup setup;
    double baseline_bound = 0.0;
    double threshold = 0.0;
    double rho = 0.0;
    double rho_bar = 0.0;
    bool baseline_bound_auto = false;
    bool threshold_from_fraction = false;
    bool rho_auto = false;
    std::vector<std::int64_t> snapshot_stages;
};

/// The planar unit-disk instance shipped in configs/unit_disk.cfg.
[[nodiscard]] ExperimentConfig default_config();

/// `key = value` lines, '#' comments. Vectors are comma separated, matrix
/// rows are separated by ';'. Unknown keys are errors. Throws ConfigError.
[[nodiscard]] ExperimentConfig parse_config(std::istream& in);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// Emits every key; parse_config(write_config(c)) == c.
void write_config(std::ostream& out, const ExperimentConfig& config);
[[nodiscard]] std::string config_to_string(const ExperimentConfig& config);

/// Re-checks all instance invariants and resolves the "auto" entries.
/// Throws ConfigError naming the field and the violated condition.
[[nodiscard]] ResolvedExperiment resolve(const ExperimentConfig& config);

}  // namespace sege
