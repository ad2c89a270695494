#pragma once

#include <cstdint>
#include <random>

namespace fxdiag {

using Engine = std::mt19937_64;

/// Independent engine for replication `stream` of a run seeded with `seed`. Built on
/// std::seed_seq, whose mixing is fully specified, so streams are reproducible everywhere.
inline Engine substream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x9e3779b9u};
    return Engine(seq);
}

/// Uniform double in [0, 1) from the top 53 bits; avoids implementation-defined distributions.
inline double uniform01(Engine& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

/// Uniform double in (0, 1).
inline double uniform_open(Engine& eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace fxdiag
