#pragma once

#include <cstdint>

namespace hitlab {

// SplitMix64. This is the project-wide PRNG: every sampled quantity in the
// experiment driver is derived from (seed, stream) through this generator,
// so runs are replicable from the seed alone, in any language.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // Independent stream for instance `index` of a run with master seed `seed`.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mix(seed ^ (0x6a09e667f3bcc909ULL * (index + 1)));
        mix.next_u64();
        return mix;
    }

private:
    std::uint64_t state_;
};

}  // namespace hitlab
