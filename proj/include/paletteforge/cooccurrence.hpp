#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paletteforge/image.hpp"
#include "paletteforge/scan.hpp"

namespace paletteforge {

/// Symmetric histogram of index pairs that sit next to each other in the
/// scan. Evaluating a permutation against it gives the same number as
/// rescanning the permuted image, at O(pairs) instead of O(mn).
class CooccurrenceMatrix {
public:
    struct Pair {
        std::uint8_t a = 0;  // a < b
        std::uint8_t b = 0;
        std::uint64_t count = 0;
    };

    CooccurrenceMatrix() = default;

    static CooccurrenceMatrix from_image(const IndexedImage& img,
                                         ScanMode mode = ScanMode::serpentine);
    static CooccurrenceMatrix from_sequence(const ScanSequence& seq, std::size_t palette_size);

    std::size_t palette_size() const { return palette_size_; }
    std::uint64_t at(std::size_t a, std::size_t b) const {
        return counts_[a * palette_size_ + b];
    }
    std::uint64_t adjacency_total() const { return adjacency_total_; }

    /// Off-diagonal entries with a < b and count > 0.
    std::span<const Pair> pairs() const { return pairs_; }

    /// Cost of the image reindexed by `perm`: sum of count * |perm[a] - perm[b]|.
    std::int64_t evaluate(const Permutation& perm) const;

private:
    std::size_t palette_size_ = 0;
    std::uint64_t adjacency_total_ = 0;
    std::vector<std::uint64_t> counts_;  // dense M x M, symmetric
    std::vector<Pair> pairs_;
};

}  // namespace paletteforge
