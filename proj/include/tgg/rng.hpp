#pragma once

// Counter-based randomness: every draw is a pure function of a key, so the
// same (seed, u, v) pair yields the same bits no matter which code path or
// worker asks for it.

#include <cstdint>

namespace tgg {

// SplitMix64 finalizer (Stafford mix13). Public-domain constants.
inline uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline uint64_t mix64(uint64_t a, uint64_t b) {
    return mix64(a + 0x9e3779b97f4a7c15ULL * (b + 1));
}

inline uint64_t mix64(uint64_t a, uint64_t b, uint64_t c) {
    return mix64(mix64(a, b), c);
}

inline uint64_t mix64(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
    return mix64(mix64(a, b, c), d);
}

// 53-bit mantissa uniform in [0,1).
inline double u01(uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Stream tags keep unrelated draws on disjoint keys.
enum Stream : uint64_t {
    kStreamPoint = 1,
    kStreamEdge = 2,
    kStreamTau = 3,
    kStreamTrial = 4,
    kStreamSource = 5,
    kStreamPerc = 6,
    kStreamPair = 7,
};

// Sequential generator for places where a stream (not keyed access) is fine.
struct SplitMix {
    uint64_t state;
    explicit SplitMix(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        return mix64(state);
    }
    double next_u01() { return u01(next()); }
    // uniform integer in [0, n)
    uint64_t next_below(uint64_t n) {
        // rejection-free Lemire reduction; bias < 2^-64, irrelevant here
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        return static_cast<uint64_t>(m >> 64);
    }
};

}  // namespace tgg
