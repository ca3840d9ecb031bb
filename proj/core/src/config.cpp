#include "sege/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>

namespace sege {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_double(std::string_view text, const std::string& key) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
    }
    if (!std::isfinite(value)) throw ConfigError(key, "value must be finite");
    return value;
}

template <typename Int>
Int parse_integer(std::string_view text, const std::string& key) {
    text = trim(text);
    Int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

Vector parse_vector(std::string_view text, const std::string& key) {
    const auto parts = split(text, ',');
    Vector v(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_double(parts[i], key);
    return v;
}

Matrix parse_matrix(std::string_view text, const std::string& key) {
    const auto rows = split(text, ';');
    std::vector<Vector> parsed;
    for (auto row : rows) parsed.push_back(parse_vector(row, key));
    const auto cols = parsed.front().size();
    Matrix m(static_cast<Eigen::Index>(parsed.size()), cols);
    for (std::size_t r = 0; r < parsed.size(); ++r) {
        if (parsed[r].size() != cols) throw ConfigError(key, "rows have different lengths");
        m.row(static_cast<Eigen::Index>(r)) = parsed[r].transpose();
    }
    return m;
}

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string format_vector(const Vector& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_double(v(i));
    }
    return out;
}

std::string format_matrix(const Matrix& m) {
    std::string out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (r) out += "; ";
        out += format_vector(m.row(r).transpose());
    }
    return out;
}

bool same(const Vector& a, const Vector& b) { return a.size() == b.size() && a == b; }
bool same(const Matrix& a, const Matrix& b) { return a.rows() == b.rows() && a.cols() == b.cols() && a == b; }

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
    return same(center, o.center) && same(shape, o.shape) && same(theta_star, o.theta_star) &&
           theta_bound == o.theta_bound && noise_sd == o.noise_sd && same(baseline_arm, o.baseline_arm) &&
           baseline_bound == o.baseline_bound && threshold == o.threshold && rho_auto == o.rho_auto &&
           rho == o.rho && gate_c == o.gate_c && lambda == o.lambda && risk.form == o.risk.form &&
           risk.delta_bar == o.risk.delta_bar && risk.decay == o.risk.decay && clucb.alpha == o.clucb.alpha &&
           clucb.delta == o.clucb.delta && clucb.discretization == o.clucb.discretization &&
           clucb.lambda == o.clucb.lambda && policies == o.policies && horizon == o.horizon &&
           replications == o.replications && seed == o.seed && threads == o.threads &&
           output_dir == o.output_dir && snapshot_stages == o.snapshot_stages && snapshot_grid == o.snapshot_grid;
}

ExperimentConfig default_config() {
    ExperimentConfig c;
    c.center = Vector::Ones(2);
    c.shape = Matrix::Identity(2, 2);
    c.theta_star = (Vector(2) << 0.6, 0.8).finished();
    c.theta_bound = 1.0;
    c.noise_sd = 1.0;
    c.baseline_arm = (Vector(2) << 1.2, 1.9).finished();
    c.baseline_bound = {BaselineBoundSpec::Mode::Auto, 0.0};
    c.threshold = {true, 0.8};
    c.rho_auto = true;
    c.gate_c = 0.5;
    c.lambda = 0.1;
    c.risk = {RiskSchedule::Form::SummableQuadratic, 0.1, 0.0};
    return c;
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig c = default_config();
    std::optional<double> radius;
    bool shape_given = false;
    std::optional<std::int64_t> dimension;
    bool fraction_given = false;
    bool value_given = false;
    std::map<std::string, int> seen;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
        if (value.empty()) throw ConfigError(key, "missing value");
        if (seen[key]++) throw ConfigError(key, "given more than once");

        if (key == "dimension") {
            dimension = parse_integer<std::int64_t>(value, key);
        } else if (key == "arm_set.center") {
            c.center = parse_vector(value, key);
        } else if (key == "arm_set.shape") {
            c.shape = parse_matrix(value, key);
            shape_given = true;
        } else if (key == "arm_set.radius") {
            radius = parse_double(value, key);
        } else if (key == "theta_star") {
            c.theta_star = parse_vector(value, key);
        } else if (key == "theta_bound") {
            c.theta_bound = parse_double(value, key);
        } else if (key == "noise_sd") {
            c.noise_sd = parse_double(value, key);
        } else if (key == "baseline.arm") {
            c.baseline_arm = parse_vector(value, key);
        } else if (key == "baseline.bound") {
            if (value == "auto") {
                c.baseline_bound = {BaselineBoundSpec::Mode::Auto, 0.0};
            } else if (value == "worst-case") {
                c.baseline_bound = {BaselineBoundSpec::Mode::WorstCase, 0.0};
            } else {
                c.baseline_bound = {BaselineBoundSpec::Mode::Explicit, parse_double(value, key)};
            }
        } else if (key == "threshold.fraction") {
            c.threshold = {true, parse_double(value, key)};
            fraction_given = true;
        } else if (key == "threshold.value") {
            c.threshold = {false, parse_double(value, key)};
            value_given = true;
        } else if (key == "sege.rho") {
            c.rho_auto = value == "auto";
            c.rho = c.rho_auto ? 0.0 : parse_double(value, key);
        } else if (key == "sege.c") {
            c.gate_c = parse_double(value, key);
        } else if (key == "sege.lambda") {
            c.lambda = parse_double(value, key);
        } else if (key == "sege.risk") {
            const auto form = parse_risk_form(value);
            if (!form) throw ConfigError(key, "unknown schedule '" + std::string(value) + "'");
            c.risk.form = *form;
        } else if (key == "sege.delta_bar") {
            c.risk.delta_bar = parse_double(value, key);
        } else if (key == "sege.risk_decay") {
            c.risk.decay = parse_double(value, key);
        } else if (key == "clucb.alpha") {
            c.clucb.alpha = parse_double(value, key);
        } else if (key == "clucb.delta") {
            c.clucb.delta = parse_double(value, key);
        } else if (key == "clucb.discretization") {
            c.clucb.discretization = parse_integer<int>(value, key);
        } else if (key == "clucb.lambda") {
            c.clucb.lambda = parse_double(value, key);
        } else if (key == "run.policies") {
            c.policies.clear();
            if (value == "all") {
                c.policies.assign(kAllPolicies.begin(), kAllPolicies.end());
            } else {
                for (auto name : split(value, ',')) {
                    const auto kind = parse_policy(name);
                    if (!kind) throw ConfigError(key, "unknown policy '" + std::string(name) + "'");
                    if (std::find(c.policies.begin(), c.policies.end(), *kind) != c.policies.end()) {
                        throw ConfigError(key, "policy '" + std::string(name) + "' listed twice");
                    }
                    c.policies.push_back(*kind);
                }
            }
        } else if (key == "run.horizon") {
            c.horizon = parse_integer<std::int64_t>(value, key);
        } else if (key == "run.replications") {
            c.replications = parse_integer<std::size_t>(value, key);
        } else if (key == "run.seed") {
            c.seed = parse_integer<std::uint64_t>(value, key);
        } else if (key == "run.threads") {
            c.threads = parse_integer<unsigned>(value, key);
        } else if (key == "run.output_dir") {
            c.output_dir = std::string(value);
        } else if (key == "run.snapshot_stages") {
            c.snapshot_stages.clear();
            if (value != "default") {
                for (auto part : split(value, ',')) c.snapshot_stages.push_back(parse_integer<std::int64_t>(part, key));
            }
        } else if (key == "run.snapshot_grid") {
            c.snapshot_grid = parse_integer<int>(value, key);
        } else {
            throw ConfigError(key, "unknown key");
        }
    }

    if (radius && shape_given) throw ConfigError("arm_set", "give either radius or shape, not both");
    if (fraction_given && value_given) throw ConfigError("threshold", "give either fraction or value, not both");
    if (radius) {
        if (!(*radius > 0.0)) throw ConfigError("arm_set.radius", "radius must be positive");
        c.shape = (*radius * *radius) * Matrix::Identity(c.center.size(), c.center.size());
    }
    if (dimension && *dimension != c.center.size()) {
        throw ConfigError("dimension", "declared " + std::to_string(*dimension) + " but arm_set.center has " +
                                           std::to_string(c.center.size()) + " entries");
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
    return parse_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& c) {
    out << "dimension = " << c.dim() << '\n';
    out << "arm_set.center = " << format_vector(c.center) << '\n';
    out << "arm_set.shape = " << format_matrix(c.shape) << '\n';
    out << "theta_star = " << format_vector(c.theta_star) << '\n';
    out << "theta_bound = " << format_double(c.theta_bound) << '\n';
    out << "noise_sd = " << format_double(c.noise_sd) << '\n';
    out << "baseline.arm = " << format_vector(c.baseline_arm) << '\n';
    out << "baseline.bound = ";
    switch (c.baseline_bound.mode) {
        case BaselineBoundSpec::Mode::Auto: out << "auto"; break;
        case BaselineBoundSpec::Mode::WorstCase: out << "worst-case"; break;
        case BaselineBoundSpec::Mode::Explicit: out << format_double(c.baseline_bound.value); break;
    }
    out << '\n';
    out << (c.threshold.is_fraction ? "threshold.fraction = " : "threshold.value = ")
        << format_double(c.threshold.value) << '\n';
    out << "sege.rho = " << (c.rho_auto ? std::string("auto") : format_double(c.rho)) << '\n';
    out << "sege.c = " << format_double(c.gate_c) << '\n';
    out << "sege.lambda = " << format_double(c.lambda) << '\n';
    out << "sege.risk = " << to_string(c.risk.form) << '\n';
    out << "sege.delta_bar = " << format_double(c.risk.delta_bar) << '\n';
    out << "sege.risk_decay = " << format_double(c.risk.decay) << '\n';
    out << "clucb.alpha = " << format_double(c.clucb.alpha) << '\n';
    out << "clucb.delta = " << format_double(c.clucb.delta) << '\n';
    out << "clucb.discretization = " << c.clucb.discretization << '\n';
    out << "clucb.lambda = " << format_double(c.clucb.lambda) << '\n';
    out << "run.policies = ";
    for (std::size_t i = 0; i < c.policies.size(); ++i) out << (i ? ", " : "") << to_string(c.policies[i]);
    out << '\n';
    out << "run.horizon = " << c.horizon << '\n';
    out << "run.replications = " << c.replications << '\n';
    out << "run.seed = " << c.seed << '\n';
    out << "run.threads = " << c.threads << '\n';
    out << "run.output_dir = " << c.output_dir << '\n';
    out << "run.snapshot_stages = ";
    if (c.snapshot_stages.empty()) out << "default";
    for (std::size_t i = 0; i < c.snapshot_stages.size(); ++i) out << (i ? ", " : "") << c.snapshot_stages[i];
    out << '\n';
    out << "run.snapshot_grid = " << c.snapshot_grid << '\n';
}

std::string config_to_string(const ExperimentConfig& config) {
    std::ostringstream out;
    write_config(out, config);
    return out.str();
}

ResolvedExperiment resolve(const ExperimentConfig& c) {
    const auto d = c.center.size();
    if (d < 1) throw ConfigError("arm_set.center", "must have at least one entry");
    if (c.shape.rows() != d || c.shape.cols() != d) {
        throw ConfigError("arm_set.shape", "must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    if (c.theta_star.size() != d) throw ConfigError("theta_star", "dimension differs from arm_set.center");
    if (c.baseline_arm.size() != d) throw ConfigError("baseline.arm", "dimension differs from arm_set.center");

    std::optional<SymmetricMatrix> shape;
    try {
        shape.emplace(c.shape);
    } catch (const std::invalid_argument&) {
        throw ConfigError("arm_set.shape", "H must be symmetric");
    }
    if (!(min_eigenvalue(*shape) > 0.0)) throw ConfigError("arm_set.shape", "H must be positive definite");
    const EllipsoidArmSet arm_set(c.center, *shape);

    if (!(c.theta_bound > 0.0)) throw ConfigError("theta_bound", "S must be positive");
    if (c.theta_star.norm() > c.theta_bound) throw ConfigError("theta_star", "||theta*|| > S");
    if (!(c.noise_sd >= 0.0)) throw ConfigError("noise_sd", "sigma must be nonnegative");
    if (!arm_set.contains(c.baseline_arm, kFeasibilityTolerance)) {
        throw ConfigError("baseline.arm", "X0 lies outside the arm set");
    }

    struct {
        double baseline_bound, threshold, rho, rho_bar;
        bool baseline_bound_auto, threshold_from_fraction, rho_auto;
        std::vector<std::int64_t> snapshot_stages;
    } r{};

    const double attained = c.baseline_arm.dot(c.theta_star);
    switch (c.baseline_bound.mode) {
        case BaselineBoundSpec::Mode::Auto: r.baseline_bound = attained; break;
        case BaselineBoundSpec::Mode::WorstCase:
            r.baseline_bound = worst_case_baseline_bound(c.baseline_arm, c.theta_bound);
            break;
        case BaselineBoundSpec::Mode::Explicit: r.baseline_bound = c.baseline_bound.value; break;
    }
    r.baseline_bound_auto = c.baseline_bound.mode != BaselineBoundSpec::Mode::Explicit;
    if (r.baseline_bound > attained) throw ConfigError("baseline.bound", "b0 > <X0, theta*>");

    r.threshold_from_fraction = c.threshold.is_fraction;
    r.threshold = c.threshold.is_fraction ? c.threshold.value * r.baseline_bound : c.threshold.value;
    if (!(r.threshold < r.baseline_bound)) {
        throw ConfigError(c.threshold.is_fraction ? "threshold.fraction" : "threshold.value", "b >= b0");
    }

    r.rho_bar = rho_bar(r.baseline_bound, r.threshold, c.theta_bound, arm_set.max_shape_eigenvalue());
    r.rho_auto = c.rho_auto;
    r.rho = c.rho_auto ? r.rho_bar : c.rho;
    if (!(r.rho > 0.0 && r.rho <= r.rho_bar)) throw ConfigError("sege.rho", "rho must lie in (0, rho_bar]");
    if (!(r.rho < 1.0)) throw ConfigError("sege.rho", "rho must be below 1");
    if (!(c.gate_c > 0.0)) throw ConfigError("sege.c", "c must be positive");
    if (!(c.lambda > 0.0)) throw ConfigError("sege.lambda", "lambda must be positive");
    if (!(c.risk.delta_bar > 0.0 && c.risk.delta_bar < 1.0)) {
        throw ConfigError("sege.delta_bar", "delta_bar must lie in (0, 1)");
    }
    if (!(c.risk.decay >= 0.0)) throw ConfigError("sege.risk_decay", "decay must be nonnegative");

    if (!(c.clucb.alpha > 0.0 && c.clucb.alpha < 1.0)) throw ConfigError("clucb.alpha", "alpha must lie in (0, 1)");
    if (!(c.clucb.delta > 0.0 && c.clucb.delta < 1.0)) throw ConfigError("clucb.delta", "delta must lie in (0, 1)");
    if (c.clucb.discretization < 3) throw ConfigError("clucb.discretization", "need at least 3 points");
    if (!(c.clucb.lambda > 0.0)) throw ConfigError("clucb.lambda", "lambda must be positive");
    const bool wants_clucb = std::find(c.policies.begin(), c.policies.end(), PolicyKind::Clucb) != c.policies.end();
    if (wants_clucb && d != 2) throw ConfigError("run.policies", "CLUCB needs a planar arm set");

    if (c.policies.empty()) throw ConfigError("run.policies", "no policy selected");
    if (c.horizon < 1) throw ConfigError("run.horizon", "T must be at least 1");
    if (c.replications < 1) throw ConfigError("run.replications", "need at least one replication");
    if (c.snapshot_grid < 16) throw ConfigError("run.snapshot_grid", "grid must be at least 16");
    for (auto s : c.snapshot_stages) {
        if (s < 1) throw ConfigError("run.snapshot_stages", "stages start at 1");
    }
    if (c.snapshot_stages.empty()) {
        r.snapshot_stages = default_snapshot_stages(c.horizon);
    } else {
        for (auto s : c.snapshot_stages) {
            if (s <= c.horizon) r.snapshot_stages.push_back(s);
        }
        std::sort(r.snapshot_stages.begin(), r.snapshot_stages.end());
        r.snapshot_stages.erase(std::unique(r.snapshot_stages.begin(), r.snapshot_stages.end()),
                                r.snapshot_stages.end());
    }
    if (d != 2) r.snapshot_stages.clear();

    std::optional<Environment> env;
    try {
        env.emplace(EnvironmentSpec{c.theta_star, c.theta_bound, c.noise_sd, arm_set, c.baseline_arm,
                                    r.baseline_bound, r.threshold});
    } catch (const std::invalid_argument& e) {
        throw ConfigError("", e.what());
    }
    return ResolvedExperiment{ExperimentSetup{std::move(*env), SegeConfig{r.rho, c.gate_c, c.lambda, c.risk}, c.clucb},
                              r.baseline_bound,
                              r.threshold,
                              r.rho,
                              r.rho_bar,
                              r.baseline_bound_auto,
                              r.threshold_from_fraction,
                              r.rho_auto,
                              std::move(r.snapshot_stages)};
}

}  // namespace sege
