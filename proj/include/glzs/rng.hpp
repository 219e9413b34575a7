#pragma once

#include <cstdint>

namespace glzs {

// Counter-based deterministic generator built from splitmix64.  A draw is a
// pure function of (seed, stream, counter), so grid sweeps can be evaluated
// in any order on any number of threads and still reproduce bit-identically
// on every platform (integer arithmetic only).

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
}

// uniform in [0, 1) with 53 random bits
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(counter_hash(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// stream id for an experiment point, so per-point substreams never collide
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    return counter_hash(seed, 0x5eedULL, index);
}

} // namespace glzs
