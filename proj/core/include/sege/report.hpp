#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sege/config.hpp"
#include "sege/harness.hpp"

namespace sege {

/// Comma-separated stage table. A leading "# seed=S replication=R" line
/// identifies the run; each row carries its policy so several policies of
/// one replication share a file. Doubles are written in shortest
/// round-trip form, absent values as "nan".
void write_trace_table(std::ostream& out, std::span<const RunTrace> traces);
/// The two halves of write_trace_table, for writing one policy at a time.
void write_trace_header(std::ostream& out, std::uint64_t seed, std::uint64_t replication, Eigen::Index dim);
void write_trace_rows(std::ostream& out, const RunTrace& trace);
/// Inverse of write_trace_table; one RunTrace per policy, in file order.
/// Throws std::runtime_error on malformed input.
[[nodiscard]] std::vector<RunTrace> read_trace_table(std::istream& in);

/// "trace_rep0007.csv" style names, zero-padded to fit `count` files.
[[nodiscard]] std::string trace_file_name(std::uint64_t replication, std::size_t count);

/// Stages reported in the summary: powers of ten, the snapshot list and T.
[[nodiscard]] std::vector<std::int64_t> summary_checkpoints(std::int64_t horizon);

/// JSON document with the config echo, the resolved "auto" values and one
/// section per policy. Contains no timings, so identical inputs give
/// identical bytes.
[[nodiscard]] std::string summary_json(const ExperimentConfig& config, const ResolvedExperiment& resolved,
                                       std::span<const AggregateSummary> aggregates);

struct PolicyTiming {
    PolicyKind policy = PolicyKind::Sege;
    double seconds = 0.0;
};

[[nodiscard]] std::string timings_json(std::span<const PolicyTiming> timings, double total_seconds);

}  // namespace sege
