#include "sege/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <json.hpp>

namespace sege {

namespace {

using nlohmann::ordered_json;

void put_double(std::ostream& out, double v) {
    if (std::isnan(v)) {
        out << "nan";
        return;
    }
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.write(buf.data(), ptr - buf.data());
}

double get_double(std::string_view s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::runtime_error("trace table: bad number '" + std::string(s) + "'");
    }
    return v;
}

std::int64_t get_int(std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::runtime_error("trace table: bad integer '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

// JSON has no NaN; absent values become null.
ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json vector_json(const Vector& v) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

const char* bound_source(BaselineBoundSpec::Mode mode) {
    switch (mode) {
        case BaselineBoundSpec::Mode::Auto: return "auto";
        case BaselineBoundSpec::Mode::WorstCase: return "worst-case";
        case BaselineBoundSpec::Mode::Explicit: return "explicit";
    }
    return "?";
}

}  // namespace

void write_trace_header(std::ostream& out, std::uint64_t seed, std::uint64_t replication, Eigen::Index dim) {
    out << "# seed=" << seed << " replication=" << replication << '\n';
    out << "t,policy";
    for (Eigen::Index i = 0; i < dim; ++i) out << ",x" << i + 1;
    out << ",tag,reward,expected_reward,regret_increment,cum_regret,lambda_min,lambda_min_post,delta_t,radius,"
           "lcb_greedy,violated,exploration_count\n";
}

void write_trace_rows(std::ostream& out, const RunTrace& trace) {
    const auto policy = to_string(trace.policy);
    for (const auto& s : trace.stages) {
        out << s.t << ',' << policy;
        for (Eigen::Index i = 0; i < s.arm.size(); ++i) {
            out << ',';
            put_double(out, s.arm(i));
        }
        out << ',' << to_string(s.tag);
        for (double v : {s.reward, s.expected_reward, s.regret_increment, s.cumulative_regret, s.lambda_min_prev,
                         s.lambda_min_post, s.delta, s.radius, s.lcb_greedy}) {
            out << ',';
            put_double(out, v);
        }
        out << ',' << (s.violated ? 1 : 0) << ',' << s.exploration_count << '\n';
    }
}

void write_trace_table(std::ostream& out, std::span<const RunTrace> traces) {
    if (traces.empty()) throw std::invalid_argument("write_trace_table: no traces");
    const auto& first = traces.front();
    const Eigen::Index d = first.stages.empty() ? 0 : first.stages.front().arm.size();
    for (const auto& trace : traces) {
        if (trace.seed != first.seed || trace.replication != first.replication) {
            throw std::invalid_argument("write_trace_table: traces belong to different replications");
        }
        for (const auto& s : trace.stages) {
            if (s.arm.size() != d) throw std::invalid_argument("write_trace_table: arm dimension changes");
        }
    }
    write_trace_header(out, first.seed, first.replication, d);
    for (const auto& trace : traces) write_trace_rows(out, trace);
}

std::vector<RunTrace> read_trace_table(std::istream& in) {
    std::string line;
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
    if (!std::getline(in, line) ||
        std::sscanf(line.c_str(), "# seed=%" SCNu64 " replication=%" SCNu64, &seed, &replication) != 2) {
        throw std::runtime_error("trace table: missing '# seed=... replication=...' line");
    }
    if (!std::getline(in, line)) throw std::runtime_error("trace table: missing header");
    const auto header = split_csv(line);
    constexpr std::size_t kFixed = 14;  // all columns except the arm components
    if (header.size() < kFixed + 1 || header[0] != "t" || header[1] != "policy") {
        throw std::runtime_error("trace table: unexpected header");
    }
    const std::size_t d = header.size() - kFixed;

    std::vector<RunTrace> traces;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != header.size()) throw std::runtime_error("trace table: wrong field count");
        const auto policy = parse_policy(f[1]);
        if (!policy) throw std::runtime_error("trace table: unknown policy '" + std::string(f[1]) + "'");
        if (traces.empty() || traces.back().policy != *policy) {
            traces.push_back(RunTrace{*policy, seed, replication, {}, {}});
        }
        StageRecord s;
        s.t = get_int(f[0]);
        s.arm.resize(static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) s.arm(static_cast<Eigen::Index>(i)) = get_double(f[2 + i]);
        std::size_t k = 2 + d;
        const auto tag = parse_stage_tag(f[k++]);
        if (!tag) throw std::runtime_error("trace table: unknown tag '" + std::string(f[k - 1]) + "'");
        s.tag = *tag;
        s.reward = get_double(f[k++]);
        s.expected_reward = get_double(f[k++]);
        s.regret_increment = get_double(f[k++]);
        s.cumulative_regret = get_double(f[k++]);
        s.lambda_min_prev = get_double(f[k++]);
        s.lambda_min_post = get_double(f[k++]);
        s.delta = get_double(f[k++]);
        s.radius = get_double(f[k++]);
        s.lcb_greedy = get_double(f[k++]);
        s.violated = get_int(f[k++]) != 0;
        s.exploration_count = get_int(f[k++]);
        traces.back().stages.push_back(std::move(s));
    }
    return traces;
}

std::string trace_file_name(std::uint64_t replication, std::size_t count) {
    const auto width = std::max<std::size_t>(4, std::to_string(count == 0 ? 0 : count - 1).size());
    std::string digits = std::to_string(replication);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return "trace_rep" + digits + ".csv";
}

std::vector<std::int64_t> summary_checkpoints(std::int64_t horizon) {
    std::vector<std::int64_t> out;
    for (std::int64_t t = 1; t <= horizon; t *= 10) out.push_back(t);
    for (std::int64_t t : {250, 500, 1000, 2000, 2500, 5000, 10000, 50000}) {
        if (t <= horizon) out.push_back(t);
    }
    out.push_back(horizon);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string summary_json(const ExperimentConfig& config, const ResolvedExperiment& resolved,
                         std::span<const AggregateSummary> aggregates) {
    ordered_json doc;

    // Config echo, one entry per key of the config file.
    ordered_json echo = ordered_json::object();
    std::istringstream lines(config_to_string(config));
    for (std::string line; std::getline(lines, line);) {
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        // Where the files go and how many threads ran do not affect the results.
        const std::string key = line.substr(0, eq);
        if (key == "run.output_dir" || key == "run.threads") continue;
        echo[key] = line.substr(eq + 3);
    }
    doc["config"] = std::move(echo);

    const Environment& env = resolved.setup.env;
    ordered_json r;
    r["baseline_bound"] = resolved.baseline_bound;
    r["baseline_bound_source"] = bound_source(config.baseline_bound.mode);
    r["threshold"] = resolved.threshold;
    r["threshold_source"] = resolved.threshold_from_fraction ? "fraction" : "explicit";
    r["rho"] = resolved.rho;
    r["rho_source"] = resolved.rho_auto ? "auto" : "explicit";
    r["rho_bar"] = resolved.rho_bar;
    r["optimal_arm"] = vector_json(env.optimal_arm());
    r["optimal_reward"] = env.optimal_reward();
    r["max_arm_norm"] = env.public_view().max_arm_norm;
    r["snapshot_stages"] = resolved.snapshot_stages;
    doc["resolved"] = std::move(r);

    ordered_json policies = ordered_json::object();
    for (const auto& a : aggregates) {
        ordered_json p;
        p["horizon"] = a.horizon;
        p["replications"] = a.replications;
        p["seed"] = a.seed;
        p["replication_ids"] = a.replication_ids;
        p["total_violations"] = a.total_violations;
        p["runs_with_violation"] = a.runs_with_violation;
        p["mean_final_exploration"] = a.mean_final_exploration;
        ordered_json checkpoints = ordered_json::array();
        for (auto t : summary_checkpoints(a.horizon)) {
            const auto k = static_cast<std::size_t>(t - 1);
            ordered_json c;
            c["t"] = t;
            c["mean_reward"] = number(a.mean_reward[k]);
            c["min_reward"] = number(a.min_reward[k]);
            c["max_reward"] = number(a.max_reward[k]);
            c["mean_regret"] = number(a.mean_regret[k]);
            c["min_regret"] = number(a.min_regret[k]);
            c["max_regret"] = number(a.max_regret[k]);
            c["mean_exploration"] = number(a.mean_exploration[k]);
            checkpoints.push_back(std::move(c));
        }
        p["checkpoints"] = std::move(checkpoints);
        policies[std::string(to_string(a.policy))] = std::move(p);
    }
    doc["policies"] = std::move(policies);
    return doc.dump(2) + "\n";
}

std::string timings_json(std::span<const PolicyTiming> timings, double total_seconds) {
    ordered_json doc;
    ordered_json per = ordered_json::object();
    for (const auto& t : timings) per[std::string(to_string(t.policy))] = t.seconds;
    doc["policies"] = std::move(per);
    doc["total_seconds"] = total_seconds;
    return doc.dump(2) + "\n";
}

}  // namespace sege
