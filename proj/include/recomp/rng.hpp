#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace recomp {

// Seedable generator with a fully specified output stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are implementation-defined, so the
// two derived draws used throughout the library are written out here:
//   uniform_index(n): rejection sampling on the top bits (no modulo bias).
//   uniform01():      top 53 bits scaled by 2^-53, in [0, 1).
// Streams are therefore identical across compilers and platforms.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n <= 1) {
            return 0;
        }
        // Smallest all-ones mask covering n - 1.
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            const std::uint64_t draw = engine_() & mask;
            if (draw < n) {
                return draw;
            }
        }
    }

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // UniformRandomBitGenerator surface, for std::shuffle and friends in tests.
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Seed for restart or shard `index` of a run seeded with `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) { return base + index; }

}  // namespace recomp
