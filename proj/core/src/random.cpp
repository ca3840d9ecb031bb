#include "sege/random.hpp"

#include <array>

namespace sege {

namespace {

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

Rng make_stream(std::uint64_t master_seed, std::uint64_t replication, std::string_view name) {
    const std::uint64_t tag = fnv1a(name);
    const std::array<std::uint32_t, 6> words{
        static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(replication), static_cast<std::uint32_t>(replication >> 32),
        static_cast<std::uint32_t>(tag),         static_cast<std::uint32_t>(tag >> 32),
    };
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

ReplicationStreams::ReplicationStreams(std::uint64_t master_seed, std::uint64_t replication)
    : noise(make_stream(master_seed, replication, "noise")),
      exploration(make_stream(master_seed, replication, "exploration")),
      policy(make_stream(master_seed, replication, "policy")) {}

}  // namespace sege
