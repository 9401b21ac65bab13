#pragma once

#include <cstdint>

namespace spectral_clt {

// Counter-based RNG. Every variate is a pure function of (master seed,
// replicate, entry indices), so sampling order and thread layout cannot
// change the draw. The mixer is the splitmix64 finalizer, chained once per
// key component.

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t key_combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

// Stream key for one Monte Carlo replicate.
inline std::uint64_t replicate_key(std::uint64_t seed, std::uint64_t replicate) {
    return key_combine(mix64(seed), replicate);
}

// Uniform in [0,1) for matrix entry (i,j) of the stream `key`; callers pass
// i < j so each symmetric entry pair draws exactly one variate.
inline double entry_uniform(std::uint64_t key, std::uint64_t i, std::uint64_t j) {
    std::uint64_t h = key_combine(key_combine(key, i), j);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

} // namespace spectral_clt
