#pragma once

#include <cstdint>

namespace fcm {

/// Counter-friendly PRNG (Steele et al. SplitMix64). Every sampled tuple in
/// the checkers derives its own generator from (seed, sample index, slot), so
/// results do not depend on how a scan is partitioned across workers and the
/// first n samples of a run are a prefix of the first 2n.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }
};

/// Stable 64-bit key for the tuple (seed, index, slot).
inline std::uint64_t derive_key(std::uint64_t seed, std::int64_t index, int slot) {
    SplitMix64 g(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1));
    std::uint64_t k = g.next();
    SplitMix64 h(k + 0xBF58476D1CE4E5B9ULL * static_cast<std::uint64_t>(slot + 1));
    return h.next();
}

} // namespace fcm
