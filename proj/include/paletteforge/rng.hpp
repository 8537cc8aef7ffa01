#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "paletteforge/image.hpp"

namespace paletteforge {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n). Rejection sampling on the raw 64-bit stream,
/// so the draw sequence does not depend on the standard library's
/// distribution internals.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(Rng& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

/// Fisher-Yates shuffle driven by uniform_below.
template <typename T>
void shuffle(std::vector<T>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = std::size_t(uniform_below(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

/// Uniformly random permutation of {0, .., n-1}.
inline Permutation random_permutation(std::size_t n, Rng& rng) {
    Permutation p = Permutation::identity(n);
    shuffle(p.map, rng);
    return p;
}

}  // namespace paletteforge
