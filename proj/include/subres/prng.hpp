#pragma once

#include "subres/rational.hpp"

#include <cstdint>

namespace subres {

/// splitmix64. All randomness in the project flows through this generator so
/// that runs are reproducible bit-for-bit from a single 64-bit seed.
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4B5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4B5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        // rejection sampling to avoid modulo bias
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Uniform double in [0, 1) with 53 bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Small random rational with numerator in [-max_num, max_num] and
    /// denominator in [1, max_den].
    Rational rational(std::int64_t max_num = 6, std::int64_t max_den = 4) {
        std::int64_t num = int_in(-max_num, max_num);
        std::int64_t den = int_in(1, max_den);
        return Rational(BigInt(num), BigInt(den));
    }

    Rational nonzero_rational(std::int64_t max_num = 6, std::int64_t max_den = 4) {
        Rational r = rational(max_num, max_den);
        while (r == 0) r = rational(max_num, max_den);
        return r;
    }
};

}  // namespace subres
