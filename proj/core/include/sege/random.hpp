#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sege {

using Rng = std::mt19937_64;

/// Independent stream for one (master seed, replication, name) triple.
/// The same triple always yields the same sequence, regardless of how many
/// other streams exist or in which order they are drawn from.
[[nodiscard]] Rng make_stream(std::uint64_t master_seed, std::uint64_t replication, std::string_view name);

/// The three streams owned by each replication.
struct ReplicationStreams {
    Rng noise;        // observation noise eta_t
    Rng exploration;  // exploration directions zeta_t
    Rng policy;       // tie-breaks and other policy-internal randomness

    ReplicationStreams(std::uint64_t master_seed, std::uint64_t replication);
};

}  // namespace sege
