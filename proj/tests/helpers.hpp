#pragma once

// Shared fixtures and generators for the test suites.

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "paletteforge/image.hpp"
#include "paletteforge/rng.hpp"

namespace testsupport {

// The 4x4 worked example: four colors, index plane
//   0 1 1 2
//   1 3 3 1
//   2 0 1 0
//   0 1 2 0
inline paletteforge::IndexedImage example_image() {
    paletteforge::IndexedImage img;
    img.rows = 4;
    img.cols = 4;
    img.indices = {0, 1, 1, 2, 1, 3, 3, 1, 2, 0, 1, 0, 0, 1, 2, 0};
    img.palette.colors = {
        {100, 20, 50}, {60, 150, 200}, {140, 140, 120}, {30, 70, 80},
    };
    return img;
}

// Random valid IndexedImage: every palette entry referenced, all palette
// colors distinct.
inline paletteforge::IndexedImage random_image(paletteforge::Rng& rng, std::size_t max_side = 32,
                                               std::size_t max_colors = 256) {
    using paletteforge::uniform_below;

    paletteforge::IndexedImage img;
    img.rows = 1 + std::size_t(uniform_below(rng, max_side));
    img.cols = 1 + std::size_t(uniform_below(rng, max_side));
    const std::size_t pixels = img.rows * img.cols;
    const std::size_t m = 1 + std::size_t(uniform_below(rng, std::min(max_colors, pixels)));

    img.indices.resize(pixels);
    for (auto& v : img.indices) v = std::uint8_t(uniform_below(rng, m));

    // Pin one occurrence of every palette index at distinct positions.
    std::vector<std::size_t> positions(pixels);
    for (std::size_t i = 0; i < pixels; ++i) positions[i] = i;
    paletteforge::shuffle(positions, rng);
    for (std::size_t k = 0; k < m; ++k) img.indices[positions[k]] = std::uint8_t(k);

    std::unordered_set<std::uint32_t> used;
    while (img.palette.colors.size() < m) {
        const std::uint32_t packed = std::uint32_t(uniform_below(rng, 1u << 24));
        if (used.insert(packed).second)
            img.palette.colors.push_back(paletteforge::unpack_rgb(packed));
    }
    return img;
}

}  // namespace testsupport
