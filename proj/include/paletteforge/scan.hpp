#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paletteforge/image.hpp"

namespace paletteforge {

/// Traversal order used to linearize the index plane.
enum class ScanMode : std::uint8_t {
    serpentine = 0,  // boustrophedon rows; consecutive elements stay 4-adjacent
    row_major = 1,
};

std::string to_string(ScanMode mode);
ScanMode parse_scan_mode(const std::string& name);  // throws BadParams

/// Linearized index stream s_0 .. s_{mn-1}.
struct ScanSequence {
    std::vector<std::uint8_t> values;

    std::size_t size() const { return values.size(); }

    friend bool operator==(const ScanSequence&, const ScanSequence&) = default;
};

/// First element plus successive differences s_i - s_{i-1}.
struct ResidualSequence {
    std::uint8_t first = 0;
    std::vector<std::int16_t> deltas;

    friend bool operator==(const ResidualSequence&, const ResidualSequence&) = default;
};

ScanSequence scan(const IndexedImage& img, ScanMode mode);
ScanSequence serpentine_scan(const IndexedImage& img);

/// Writes a linear sequence back into an index plane (inverse of scan).
std::vector<std::uint8_t> unscan(const std::vector<std::uint8_t>& values, std::size_t rows,
                                 std::size_t cols, ScanMode mode);

/// Sum of absolute neighbor differences over the sequence; the quantity the
/// palette-order search minimizes. Zero for length-1 sequences.
std::int64_t neighbor_cost(const ScanSequence& seq);

ResidualSequence residuals(const ScanSequence& seq);
ScanSequence reconstruct(const ResidualSequence& res);

/// Shannon entropy (bits/symbol) of the empirical delta distribution.
/// Empty delta list (single-pixel image) reports 0 by convention.
double first_order_entropy(const ResidualSequence& res);

}  // namespace paletteforge
