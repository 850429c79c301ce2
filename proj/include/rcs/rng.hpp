#pragma once

#include <cstdint>

namespace rcs {

// Splittable counter-based randomness: every consumer derives an independent
// stream from (seed, purpose tag, indices). Identical keys give identical
// streams, so parallel and serial runs produce bit-identical results.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t s) : state(s) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound) without modulo bias.
    uint64_t next_below(uint64_t bound) {
        // Lemire's multiply-shift rejection method.
        uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<uint64_t>(m);
        if (lo < bound) {
            uint64_t threshold = -bound % bound;
            while (lo < threshold) {
                x = next();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }
};

inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Purpose tags keeping unrelated consumers on disjoint streams.
namespace stream_tag {
inline constexpr uint64_t one_gates = 1;
inline constexpr uint64_t elide = 2;
inline constexpr uint64_t miscalibration = 3;
inline constexpr uint64_t sample = 4;
inline constexpr uint64_t mixture = 5;
inline constexpr uint64_t readout = 6;
inline constexpr uint64_t trajectory = 7;
inline constexpr uint64_t fit = 8;
inline constexpr uint64_t bootstrap = 9;
} // namespace stream_tag

inline SplitMix64 substream(uint64_t seed, uint64_t tag, uint64_t a = 0, uint64_t b = 0,
                            uint64_t c = 0) {
    uint64_t h = mix64(seed);
    h = mix64(h ^ mix64(tag));
    h = mix64(h ^ mix64(a));
    h = mix64(h ^ mix64(b));
    h = mix64(h ^ mix64(c));
    return SplitMix64(h);
}

} // namespace rcs
