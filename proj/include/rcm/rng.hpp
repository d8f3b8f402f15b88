#pragma once

#include <cstdint>

namespace rcm {

// Counter-based uniform stream: every draw is addressable by (seed, stream,
// counter), so fields can be generated in any order and still replay
// bit-for-bit.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) + counter);
}

// Uniform on (0,1), never returns 0 or 1.
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter) {
    const std::uint64_t bits = counter_hash(seed, stream, counter);
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace rcm
