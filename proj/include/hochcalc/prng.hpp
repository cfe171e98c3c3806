#pragma once

#include <cstdint>

namespace hochcalc {

/// splitmix64: the seeded generator used for all randomized identity trials.
/// State transition: s += 0x9E3779B97F4A7C15; output = mix(s) with the two
/// xor-multiply rounds below. Fixed here so reports replay bit-exactly
/// across platforms and implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Small signed coefficient in [-bound, bound].
    long coeff(long bound) {
        return static_cast<long>(below(2 * static_cast<std::uint64_t>(bound) + 1)) - bound;
    }

private:
    std::uint64_t state_;
};

} // namespace hochcalc
