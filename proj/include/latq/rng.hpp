// Deterministic PRNG for reproducible instance generation.
//
// SplitMix64 (Steele, Lea, Vigna): the state advances by the golden-ratio
// increment and each output is the finalizer mix of the new state. The
// generator is fully specified here, so instances are portable across
// platforms and standard-library versions.
#pragma once

#include <cstdint>

namespace latq {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform value in [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~0ULL / bound);
        for (;;) {
            const std::uint64_t v = next();
            if (v < limit) return v % bound;
        }
    }

private:
    std::uint64_t state_;
};

// Sub-stream rule: stream k of a seeded ensemble is SplitMix64 seeded with
// mix(mix(seed) + k). mix is a bijection, so distinct k give distinct streams.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(SplitMix64::mix(SplitMix64::mix(seed) + index));
}

}  // namespace latq
