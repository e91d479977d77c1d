#pragma once

#include <cstdint>

namespace benkit {

// Splitmix64 finalizer; also used to derive sub-seeds.
inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t tag) {
    return mix64(seed ^ (0xD1B54A32D192ED03ULL * (tag + 1)));
}

// Counter-based stream generator. Every (seed, stream) pair yields an
// independent, platform-stable sequence, so Monte Carlo runs that key
// streams by trial index are a pure function of (seed, trials) no matter
// how trials are scheduled across threads.
class RngStream {
public:
    RngStream(uint64_t seed, uint64_t stream)
        : state_(mix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bernoulli(double p) { return next_unit() < p; }

    double next_uniform(double a, double b) { return a + (b - a) * next_unit(); }

    // -1.0 or +1.0 with equal probability.
    double next_sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

private:
    uint64_t state_;
};

}  // namespace benkit
