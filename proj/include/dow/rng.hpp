#pragma once

#include <cstdint>
#include <random>

namespace dow {

/// Seeded random source with a fully pinned uniform-double construction.
/// mt19937_64 output is specified by the standard and the 53-bit mantissa
/// trick avoids std::uniform_real_distribution, whose stream is
/// implementation-defined; results are therefore reproducible across
/// compilers and platforms.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace dow
