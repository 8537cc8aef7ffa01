#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "paletteforge/cooccurrence.hpp"
#include "paletteforge/image.hpp"
#include "paletteforge/rng.hpp"
#include "paletteforge/scan.hpp"

namespace paletteforge::baselines {

/// Reference palette orderings the optimizer is measured against.
enum class Strategy : std::uint8_t {
    identity,
    random,
    luminance,
    greedy_chain,
    brute_force,
    ica,
};

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& name);  // throws BadParams

/// map[k] = k.
Permutation identity_order(const IndexedImage& img);

/// Uniformly random permutation from the seeded generator.
Permutation random_order(const IndexedImage& img, Rng& rng);

/// New order sorts the palette by Rec.601 luma ascending, ties by original
/// index.
Permutation luminance_order(const IndexedImage& img);

/// Nearest-neighbor chain over RGB distance, starting from the color of the
/// most frequent index; ties go to the lowest original index.
Permutation greedy_chain_order(const IndexedImage& img);

/// Exhaustive optimum over all M! permutations (M <= 8, else
/// PaletteTooLarge). Ties resolve to the lexicographically smallest map.
std::pair<Permutation, std::int64_t> brute_force_optimal(const IndexedImage& img,
                                                         ScanMode mode = ScanMode::serpentine);

constexpr std::size_t kBruteForceMaxColors = 8;

}  // namespace paletteforge::baselines
